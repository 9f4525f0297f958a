"""Exact search for transversal/rainbow Hamilton paths and cycles.

The search walks vertex sequences depth-first. Colors are not branched on:
each appended edge is matched into the color set by one augmenting-path
step, so a partial walk survives exactly when its edges admit an injective
coloring. Absence is therefore a proof of non-existence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal, Optional

from .assign import HostSubgraph, Mode, assignment_oracle, find_assignment
from .core import DomainError, GraphCollection, bits

__all__ = [
    "MAX_N",
    "RainbowWalkResult",
    "find_transversal_hamilton_cycle",
    "find_transversal_hamilton_path",
    "find_longest_rainbow_cycle",
    "find_rainbow_cycle_of_length",
    "count_transversal_hamilton_cycles",
    "naive_transversal_hamilton_cycle",
    "naive_transversal_hamilton_path",
]

MAX_N = 24
COUNT_MAX_N = 10

Kind = Literal["path", "cycle"]


@dataclass(frozen=True)
class RainbowWalkResult:
    vertex_sequence: tuple[int, ...]
    edge_colors: tuple[int, ...]
    kind: Kind

    def edges(self) -> list[tuple[int, int]]:
        seq = self.vertex_sequence
        pairs = list(zip(seq, seq[1:]))
        if self.kind == "cycle":
            pairs.append((seq[-1], seq[0]))
        return pairs

    def host(self, n: int) -> HostSubgraph:
        return HostSubgraph.of(n, self.edges())

    def is_valid(self, c: GraphCollection) -> bool:
        seq = self.vertex_sequence
        if len(set(seq)) != len(seq) or any(not 0 <= v < c.n for v in seq):
            return False
        pairs = self.edges()
        if len(pairs) != len(self.edge_colors) or len(set(self.edge_colors)) != len(self.edge_colors):
            return False
        if self.kind == "cycle" and len(seq) < 3:
            return False
        return all(0 <= k < c.m and c.graphs[k].has_edge(u, v) for (u, v), k in zip(pairs, self.edge_colors))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "vertices": list(self.vertex_sequence), "colors": list(self.edge_colors)}


def _walk(c: GraphCollection, seq: list[int], kind: Kind, mode: Mode) -> RainbowWalkResult:
    """Attach the canonical (input-order, lowest-color) assignment to ``seq``."""
    pairs = list(zip(seq, seq[1:]))
    if kind == "cycle":
        pairs.append((seq[-1], seq[0]))
    found = find_assignment(HostSubgraph.of(c.n, pairs), c, mode)
    assert found is not None, "search accepted an uncolorable walk"
    return RainbowWalkResult(tuple(seq), found.mapping, kind)


class _Matcher:
    """Incremental edge-to-color matching over a stack of walk edges.

    Popping the last edge of a matched stack leaves a valid matching of the
    prefix, so backtracking needs no undo log.
    """

    def __init__(self, m: int):
        self.m = m
        self.owner = [-1] * m
        self.assigned: list[int] = []
        self.masks: list[int] = []

    def _augment(self, edge: int, seen: int) -> tuple[bool, int]:
        for color in bits(self.masks[edge] & ~seen):
            seen |= 1 << color
            other = self.owner[color]
            if other < 0:
                ok = True
            else:
                ok, seen = self._augment(other, seen)
            if ok:
                self.owner[color] = edge
                self.assigned[edge] = color
                return True, seen
        return False, seen

    def push(self, mask: int) -> bool:
        if not mask:
            return False
        self.masks.append(mask)
        self.assigned.append(-1)
        ok, _ = self._augment(len(self.masks) - 1, 0)
        if not ok:
            self.masks.pop()
            self.assigned.pop()
        return ok

    def pop(self) -> None:
        color = self.assigned.pop()
        self.masks.pop()
        self.owner[color] = -1


def _guard_n(n: int, max_n: int) -> None:
    if n > max_n:
        raise DomainError(f"n={n} exceeds the desk-scale cap {max_n}")


def _union_rows(c: GraphCollection) -> list[int]:
    return list(c.union_graph().adjacency)


def find_transversal_hamilton_cycle(c: GraphCollection, *, max_n: int = MAX_N) -> Optional[RainbowWalkResult]:
    """A Hamilton cycle using every color exactly once, or ``None``.

    Rooted at vertex 0; a cycle is only accepted in the orientation where
    the second vertex is smaller than the last.
    """
    n = c.n
    if c.m != n or n < 3:
        raise DomainError(f"Hamilton cycle search needs m = n >= 3, got n={n}, m={c.m}")
    _guard_n(n, max_n)
    cm = c.color_masks()
    adj = _union_rows(c)
    full = (1 << n) - 1
    match = _Matcher(c.m)
    seq = [0]

    def dfs(end: int, visited: int) -> bool:
        depth = len(seq)
        if depth == n:
            return seq[1] < end and match.push(cm[end][0])
        unvisited = full & ~visited
        reach = unvisited | 1 << end | 1
        for w in bits(unvisited):
            if (adj[w] & reach).bit_count() < 2:
                return False
        for z in bits(adj[end] & unvisited):
            if depth == n - 1 and z < seq[1]:
                continue
            if match.push(cm[end][z]):
                seq.append(z)
                if dfs(z, visited | 1 << z):
                    return True
                seq.pop()
                match.pop()
        return False

    if not dfs(0, 1):
        return None
    return _walk(c, seq, "cycle", Mode.TRANSVERSAL)


def find_transversal_hamilton_path(c: GraphCollection, *, max_n: int = MAX_N) -> Optional[RainbowWalkResult]:
    """A Hamilton path whose ``n - 1`` edges use every color exactly once."""
    n = c.n
    if n < 2 or c.m != n - 1:
        raise DomainError(f"Hamilton path search needs m = n - 1 >= 1, got n={n}, m={c.m}")
    _guard_n(n, max_n)
    cm = c.color_masks()
    adj = _union_rows(c)
    full = (1 << n) - 1
    match = _Matcher(c.m)
    seq: list[int] = []

    def dfs(end: int, visited: int) -> bool:
        if len(seq) == n:
            return True
        unvisited = full & ~visited
        reach = unvisited | 1 << end
        weak = 0
        for w in bits(unvisited):
            avail = (adj[w] & reach).bit_count()
            if avail == 0:
                return False
            if avail == 1:
                weak += 1
                if weak > 1:
                    return False
        for z in bits(adj[end] & unvisited):
            if match.push(cm[end][z]):
                seq.append(z)
                if dfs(z, visited | 1 << z):
                    return True
                seq.pop()
                match.pop()
        return False

    for start in range(n):
        seq[:] = [start]
        if dfs(start, 1 << start):
            return _walk(c, seq, "path", Mode.TRANSVERSAL)
    return None


def find_rainbow_cycle_of_length(c: GraphCollection, length: int, *, max_n: int = MAX_N) -> Optional[RainbowWalkResult]:
    """A rainbow cycle on exactly ``length`` vertices, rooted at its smallest vertex."""
    n = c.n
    _guard_n(n, max_n)
    if length < 3 or length > n or length > c.m:
        return None
    cm = c.color_masks()
    adj = _union_rows(c)
    match = _Matcher(c.m)
    seq: list[int] = []

    def dfs(end: int, visited: int, allowed: int) -> bool:
        depth = len(seq)
        if depth == length:
            return seq[1] < end and match.push(cm[end][seq[0]])
        if (allowed & ~visited).bit_count() < length - depth:
            return False
        for z in bits(adj[end] & allowed & ~visited):
            if depth == length - 1 and z < seq[1]:
                continue
            if match.push(cm[end][z]):
                seq.append(z)
                if dfs(z, visited | 1 << z, allowed):
                    return True
                seq.pop()
                match.pop()
        return False

    full = (1 << n) - 1
    for root in range(n - length + 1):
        allowed = full & ~((1 << (root + 1)) - 1)
        seq[:] = [root]
        if dfs(root, 1 << root, allowed):
            return _walk(c, seq, "cycle", Mode.RAINBOW)
    return None


def find_longest_rainbow_cycle(c: GraphCollection, min_len: int, *, max_n: int = MAX_N) -> Optional[RainbowWalkResult]:
    """The longest rainbow cycle of length at least ``min_len``, or ``None``."""
    if not 3 <= min_len <= c.n:
        raise DomainError(f"min_len must lie in [3, n], got {min_len} with n={c.n}")
    _guard_n(c.n, max_n)
    for length in range(min(c.n, c.m), min_len - 1, -1):
        found = find_rainbow_cycle_of_length(c, length, max_n=max_n)
        if found is not None:
            return found
    return None


def _count_matchings(masks: tuple[int, ...]) -> int:
    """Number of perfect matchings edges -> colors (a 0/1 permanent)."""

    @lru_cache(maxsize=None)
    def count(k: int, used: int) -> int:
        if k == len(masks):
            return 1
        return sum(count(k + 1, used | 1 << col) for col in bits(masks[k] & ~used))

    return count(0, 0)


def count_transversal_hamilton_cycles(c: GraphCollection) -> int:
    """Number of (Hamilton cycle, color bijection) pairs.

    Cycles are counted once per vertex set of edges, i.e. up to rotation and
    reflection of the vertex sequence.
    """
    n = c.n
    if c.m != n or n < 3:
        raise DomainError(f"counting needs m = n >= 3, got n={n}, m={c.m}")
    if n > COUNT_MAX_N:
        raise DomainError(f"counting is limited to n <= {COUNT_MAX_N}")
    cm = c.color_masks()
    adj = _union_rows(c)
    full = (1 << n) - 1
    cache: dict[tuple[int, ...], int] = {}
    seq = [0]
    total = 0

    def dfs(end: int, visited: int) -> None:
        nonlocal total
        if len(seq) == n:
            if seq[1] < end and adj[end] & 1:
                pairs = list(zip(seq, seq[1:])) + [(end, 0)]
                key = tuple(sorted(cm[u][v] for u, v in pairs))
                if key not in cache:
                    cache[key] = _count_matchings(key)
                total += cache[key]
            return
        for z in bits(adj[end] & full & ~visited):
            seq.append(z)
            dfs(z, visited | 1 << z)
            seq.pop()

    dfs(0, 1)
    return total


def _naive(c: GraphCollection, kind: Kind) -> Optional[RainbowWalkResult]:
    n = c.n
    for order in itertools.permutations(range(n)):
        pairs = list(zip(order, order[1:]))
        if kind == "cycle":
            pairs.append((order[-1], order[0]))
        found = assignment_oracle(HostSubgraph.of(n, pairs), c, Mode.TRANSVERSAL)
        if found is not None:
            return RainbowWalkResult(tuple(order), found.mapping, kind)
    return None


def naive_transversal_hamilton_cycle(c: GraphCollection) -> Optional[RainbowWalkResult]:
    """Oracle: every vertex ordering, each checked by brute-force coloring."""
    if c.m != c.n or c.n < 3:
        raise DomainError("naive cycle oracle needs m = n >= 3")
    return _naive(c, "cycle")


def naive_transversal_hamilton_path(c: GraphCollection) -> Optional[RainbowWalkResult]:
    """Oracle: every vertex ordering, each checked by brute-force coloring."""
    if c.n < 2 or c.m != c.n - 1:
        raise DomainError("naive path oracle needs m = n - 1 >= 1")
    return _naive(c, "path")
