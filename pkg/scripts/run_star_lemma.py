"""Extract disjoint rainbow stars from random dense bipartite collections."""

from __future__ import annotations

import argparse
import itertools
import json
import math
import random
from pathlib import Path

from transversal.core import Graph, GraphCollection
from transversal.families import extract_rainbow_stars, star_hypotheses_hold, validate_stars


def instance(t: int, rng: random.Random):
    ny = t + rng.randint(0, 2)
    nb = 7 * ny + 1 + rng.randint(0, 3)
    m = math.ceil(5 * nb / 3) + rng.randint(0, 3)
    n = ny + nb + rng.randint(0, 2)
    ys, bs = list(range(ny)), list(range(ny, ny + nb))
    p = min(1.0, t / ny + rng.uniform(0.05, 0.3))
    while True:
        graphs = []
        for _ in range(m):
            edges = [(y, x) for y in ys for x in bs if rng.random() < p]
            edges += [(u, v) for u, v in itertools.combinations(range(n), 2) if u >= ny and rng.random() < 0.05]
            graphs.append(Graph.from_edges(n, edges))
        c = GraphCollection.of(n, graphs)
        if star_hypotheses_hold(c, ys, bs, t):
            return c, ys, bs


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--t", type=int, nargs="+", default=[1, 2, 3, 4])
    parser.add_argument("--count", type=int, default=100)
    parser.add_argument("--seed", type=int, default=9)
    parser.add_argument("--out", type=Path, default=Path("results/star_lemma.json"))
    args = parser.parse_args()

    rng = random.Random(args.seed)
    rows = []
    for t in args.t:
        ok = 0
        for _ in range(args.count):
            c, ys, bs = instance(t, rng)
            stars = extract_rainbow_stars(c, ys, bs, t)
            ok += len(stars) == t and validate_stars(c, ys, bs, stars)
        rows.append({"t": t, "instances": args.count, "valid": ok})
        print(rows[-1])
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(rows, sort_keys=True, indent=2) + "\n")


if __name__ == "__main__":
    main()
