"""Exhaustive and sampled checks of the Hamilton path degree threshold."""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from transversal.harness import verify_theorem1


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, nargs="+", default=[5, 6, 7, 8])
    parser.add_argument("--count", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--out", type=Path, default=Path("results/theorem1.json"))
    args = parser.parse_args()

    reports = [verify_theorem1(4, "exhaustive", workers=args.workers)]
    reports += [verify_theorem1(n, "sample", args.count, args.seed, workers=args.workers) for n in args.n]
    for r in reports:
        print(f"n={r.parameters['n']} checked={r.checked} failures={len(r.failures)} "
              f"stages={r.summary.get('pipeline_stages')} {r.elapsed_ms} ms")
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=2) + "\n")


if __name__ == "__main__":
    main()
