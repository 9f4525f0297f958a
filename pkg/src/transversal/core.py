"""Graph collections on a shared vertex set and the TGC text format.

Graphs are dense: row ``v`` of the adjacency is an int bitmask of N(v).
Vertices and colors are 0-indexed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence, Union

__all__ = [
    "DomainError",
    "TGCParseError",
    "Graph",
    "GraphCollection",
    "Partition",
    "min_degree",
    "parse_tgc",
    "serialize_tgc",
    "bits",
]


class DomainError(ValueError):
    """An operation was called outside its precondition."""


class TGCParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise DomainError("vertex count must be non-negative")
        if len(self.adjacency) != self.n:
            raise DomainError("adjacency must have one row per vertex")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adjacency):
            if row & ~full:
                raise DomainError(f"row {v} references a vertex >= n")
            if row >> v & 1:
                raise DomainError(f"loop at vertex {v}")
            for u in bits(row):
                if not self.adjacency[u] >> v & 1:
                    raise DomainError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adjacency[v]))

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in bits(self.adjacency[u] >> (u + 1) << (u + 1))]

    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adjacency) // 2

    def min_degree(self) -> int:
        return min((row.bit_count() for row in self.adjacency), default=0)

    def union(self, other: "Graph") -> "Graph":
        return Graph(self.n, tuple(a | b for a, b in zip(self.adjacency, other.adjacency)))

    def with_edge(self, u: int, v: int) -> "Graph":
        rows = list(self.adjacency)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Vertex ``v`` becomes ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def induced_edges(self, mask: int) -> int:
        """Number of edges with both endpoints in the vertex set ``mask``."""
        return sum((self.adjacency[v] & mask).bit_count() for v in bits(mask)) // 2

    def cross_edges(self, a_mask: int, b_mask: int) -> list[tuple[int, int]]:
        """Edges ``(a, b)`` with ``a`` in ``a_mask`` and ``b`` in ``b_mask``."""
        return [(a, b) for a in bits(a_mask) for b in bits(self.adjacency[a] & b_mask)]


@dataclass(frozen=True)
class GraphCollection:
    n: int
    graphs: tuple[Graph, ...]

    def __post_init__(self) -> None:
        for i, g in enumerate(self.graphs):
            if g.n != self.n:
                raise DomainError(f"color {i} has {g.n} vertices, expected {self.n}")

    @classmethod
    def of(cls, n: int, graphs: Iterable[Graph]) -> "GraphCollection":
        return cls(n, tuple(graphs))

    @classmethod
    def copies(cls, graph: Graph, m: int) -> "GraphCollection":
        return cls(graph.n, (graph,) * m)

    @property
    def m(self) -> int:
        return len(self.graphs)

    @property
    def colors(self) -> range:
        return range(len(self.graphs))

    def __getitem__(self, color: int) -> Graph:
        return self.graphs[color]

    def __iter__(self) -> Iterator[Graph]:
        return iter(self.graphs)

    def __len__(self) -> int:
        return len(self.graphs)

    def union_graph(self) -> Graph:
        rows = [0] * self.n
        for g in self.graphs:
            for v, row in enumerate(g.adjacency):
                rows[v] |= row
        return Graph(self.n, tuple(rows))

    def color_mask(self, u: int, v: int) -> int:
        """Bitmask of colors whose graph contains the edge ``uv``."""
        mask = 0
        for i, g in enumerate(self.graphs):
            if g.adjacency[u] >> v & 1:
                mask |= 1 << i
        return mask

    def color_masks(self) -> list[list[int]]:
        """``table[u][v]`` is the color mask of the pair ``uv``."""
        table = [[0] * self.n for _ in range(self.n)]
        for i, g in enumerate(self.graphs):
            bit = 1 << i
            for u, row in enumerate(g.adjacency):
                for v in bits(row):
                    table[u][v] |= bit
        return table

    def relabel(self, perm: Sequence[int]) -> "GraphCollection":
        return GraphCollection(self.n, tuple(g.relabel(perm) for g in self.graphs))

    def permute_colors(self, order: Sequence[int]) -> "GraphCollection":
        """New color ``k`` is old color ``order[k]``."""
        return GraphCollection(self.n, tuple(self.graphs[i] for i in order))

    def replace(self, color: int, graph: Graph) -> "GraphCollection":
        graphs = list(self.graphs)
        graphs[color] = graph
        return GraphCollection(self.n, tuple(graphs))

    def with_complete_color(self) -> "GraphCollection":
        return GraphCollection(self.n, self.graphs + (Graph.complete(self.n),))


@dataclass(frozen=True)
class Partition:
    a_side: frozenset[int]
    b_side: frozenset[int]

    def __post_init__(self) -> None:
        if self.a_side & self.b_side:
            raise DomainError("partition sides overlap")

    @classmethod
    def from_a(cls, n: int, a_side: Iterable[int]) -> "Partition":
        a = frozenset(a_side)
        return cls(a, frozenset(range(n)) - a)

    def covers(self, n: int) -> bool:
        return self.a_side | self.b_side == frozenset(range(n))

    def is_equitable(self) -> bool:
        return abs(len(self.a_side) - len(self.b_side)) <= 1

    @property
    def a_mask(self) -> int:
        return sum(1 << v for v in self.a_side)

    @property
    def b_mask(self) -> int:
        return sum(1 << v for v in self.b_side)

    def swapped(self) -> "Partition":
        return Partition(self.b_side, self.a_side)


def min_degree(c: GraphCollection) -> int:
    if c.m == 0:
        raise DomainError("minimum degree of an empty collection is undefined")
    if c.n == 0:
        return 0
    return min(g.min_degree() for g in c.graphs)


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labeled graph on ``n`` vertices."""
    pairs = list(combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        yield Graph.from_edges(n, (p for k, p in enumerate(pairs) if code >> k & 1))


_INT = re.compile(r"^(0|[1-9][0-9]*)$")


def _int(token: str, line: int) -> int:
    if not _INT.match(token):
        raise TGCParseError(f"expected a non-negative integer, got {token!r}", line)
    return int(token)


def parse_tgc(text: Union[str, bytes]) -> GraphCollection:
    """Parse TGC text into a collection.

    Edges may be given in either orientation and are deduplicated within a
    color block. Color blocks may appear in any order but each index in
    ``[0, m)`` must appear exactly once.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise TGCParseError(f"not UTF-8: {exc}") from None

    lines: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body.split()))

    def header(index: int, key: str) -> int:
        if index >= len(lines):
            raise TGCParseError(f"missing '{key}' header line")
        lineno, toks = lines[index]
        if len(toks) != 2 or toks[0] != key:
            raise TGCParseError(f"expected '{key} <int>', got {' '.join(toks)!r}", lineno)
        return _int(toks[1], lineno)

    if not lines:
        raise TGCParseError("empty input")
    version = header(0, "tgc")
    if version != 1:
        raise TGCParseError(f"unsupported version {version}", lines[0][0])
    n = header(1, "n")
    m = header(2, "m")

    rows: dict[int, list[int]] = {}
    current: list[int] | None = None
    for lineno, toks in lines[3:]:
        if toks[0] == "c":
            if len(toks) != 2:
                raise TGCParseError("expected 'c <color-index>'", lineno)
            color = _int(toks[1], lineno)
            if color >= m:
                raise TGCParseError(f"color index {color} out of range for m={m}", lineno)
            if color in rows:
                raise TGCParseError(f"duplicate color block {color}", lineno)
            current = rows[color] = [0] * n
            continue
        if len(toks) != 2:
            raise TGCParseError(f"expected an edge line '<u> <v>', got {' '.join(toks)!r}", lineno)
        if current is None:
            raise TGCParseError("edge line before any color block", lineno)
        u, v = _int(toks[0], lineno), _int(toks[1], lineno)
        if u >= n or v >= n:
            raise TGCParseError(f"vertex out of range: {u} {v} with n={n}", lineno)
        if u == v:
            raise TGCParseError(f"loop edge at vertex {u}", lineno)
        current[u] |= 1 << v
        current[v] |= 1 << u

    if len(rows) != m:
        missing = sorted(set(range(m)) - set(rows))
        raise TGCParseError(f"expected {m} color blocks, missing {missing}")
    return GraphCollection(n, tuple(Graph(n, tuple(rows[i])) for i in range(m)))


def serialize_tgc(c: GraphCollection) -> str:
    out = ["tgc 1", f"n {c.n}", f"m {c.m}"]
    for i, g in enumerate(c.graphs):
        out.append(f"c {i}")
        out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"
