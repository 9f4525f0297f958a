"""Hypothesis strategies and seeded builders for graph collections."""

from __future__ import annotations

import itertools
import math
import random

from hypothesis import strategies as st

from transversal.core import Graph, GraphCollection
from transversal.families import star_hypotheses_hold


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, (e for e in itertools.combinations(range(n), 2) if rng.random() < p))


def random_collection(n: int, m: int, p: float, rng: random.Random) -> GraphCollection:
    return GraphCollection.of(n, (random_graph(n, p, rng) for _ in range(m)))


@st.composite
def graphs(draw, n: int) -> Graph:
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, (e for e, k in zip(pairs, keep) if k))


@st.composite
def collections(draw, n_min: int = 1, n_max: int = 6, m=None, m_offset=None) -> GraphCollection:
    """Collections on n vertices; ``m_offset`` fixes m = n + offset."""
    n = draw(st.integers(n_min, n_max))
    if m_offset is not None:
        size = n + m_offset
    elif m is not None:
        size = m
    else:
        size = draw(st.integers(0, 6))
    return GraphCollection.of(n, [draw(graphs(n)) for _ in range(size)])


@st.composite
def permutations(draw, n: int) -> list[int]:
    return draw(st.permutations(list(range(n))))


def star_instance(t: int, rng: random.Random):
    """Random collection meeting the density hypothesis for ``t`` stars."""
    ny = t + rng.randint(0, 2)
    nb = 7 * ny + 1 + rng.randint(0, 3)
    m = math.ceil(5 * nb / 3) + rng.randint(0, 3)
    extra = rng.randint(0, 2)
    n = ny + nb + extra
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
