"""Edge-to-color assignments: is a host subgraph rainbow or transversal?"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional

from .core import DomainError, GraphCollection, bits

__all__ = [
    "Mode",
    "HostSubgraph",
    "ColorAssignment",
    "find_assignment",
    "assignment_oracle",
    "validate_assignment",
    "ORACLE_MAX_EDGES",
]

ORACLE_MAX_EDGES = 9


class Mode(str, enum.Enum):
    RAINBOW = "rainbow"
    TRANSVERSAL = "transversal"


@dataclass(frozen=True)
class HostSubgraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        seen = set()
        for u, v in self.edges:
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise DomainError(f"bad host edge ({u}, {v}) for n={self.n}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise DomainError(f"duplicate host edge {key}")
            seen.add(key)

    @classmethod
    def of(cls, n: int, edges: Iterable[tuple[int, int]]) -> "HostSubgraph":
        return cls(n, tuple((int(u), int(v)) for u, v in edges))


@dataclass(frozen=True)
class ColorAssignment:
    """``mapping[k]`` is the color given to ``host.edges[k]``."""

    mapping: tuple[int, ...]
    mode: Mode


def _check(h: HostSubgraph, c: GraphCollection, mode: Mode) -> Mode:
    mode = Mode(mode)
    if h.n != c.n:
        raise DomainError(f"host has {h.n} vertices but collection has {c.n}")
    if mode is Mode.TRANSVERSAL and len(h.edges) != c.m:
        raise DomainError(f"transversal mode needs |E(H)| = m, got {len(h.edges)} != {c.m}")
    if mode is Mode.RAINBOW and len(h.edges) > c.m:
        raise DomainError(f"rainbow mode needs |E(H)| <= m, got {len(h.edges)} > {c.m}")
    return mode


def _augment(edge: int, masks: list[int], owner: list[int], assigned: list[int], seen: list[bool]) -> bool:
    for color in bits(masks[edge]):
        if owner[color] < 0:
            owner[color] = edge
            assigned[edge] = color
            return True
    for color in bits(masks[edge]):
        if seen[color]:
            continue
        seen[color] = True
        other = owner[color]
        if other < 0 or _augment(other, masks, owner, assigned, seen):
            owner[color] = edge
            assigned[edge] = color
            return True
    return False


def find_assignment(h: HostSubgraph, c: GraphCollection, mode: Mode | str) -> Optional[ColorAssignment]:
    """Decide rainbow/transversal membership by bipartite matching.

    Kuhn's augmenting-path algorithm, edges processed in input order. Each
    edge takes its lowest free color if one exists; otherwise colors are
    tried for displacement in ascending index order. Returns ``None`` when no
    assignment exists.
    """
    mode = _check(h, c, mode)
    masks = [c.color_mask(u, v) for u, v in h.edges]
    owner = [-1] * c.m
    assigned = [-1] * len(masks)
    for k in range(len(masks)):
        if not _augment(k, masks, owner, assigned, [False] * c.m):
            return None
    return ColorAssignment(tuple(assigned), mode)


def assignment_oracle(h: HostSubgraph, c: GraphCollection, mode: Mode | str) -> Optional[ColorAssignment]:
    """Brute-force enumeration of injections ``E(H) -> colors``.

    Independent of :func:`find_assignment`; only for small hosts.
    """
    mode = _check(h, c, mode)
    if len(h.edges) > ORACLE_MAX_EDGES:
        raise DomainError(f"oracle is limited to {ORACLE_MAX_EDGES} edges")
    members = [[g.has_edge(u, v) for g in c.graphs] for u, v in h.edges]
    chosen: list[int] = []
    used = [False] * c.m

    def extend(k: int) -> bool:
        if k == len(members):
            return True
        for color in range(c.m):
            if not used[color] and members[k][color]:
                used[color] = True
                chosen.append(color)
                if extend(k + 1):
                    return True
                chosen.pop()
                used[color] = False
        return False

    if not extend(0):
        return None
    return ColorAssignment(tuple(chosen), mode)


def validate_assignment(h: HostSubgraph, c: GraphCollection, a: ColorAssignment) -> bool:
    """Re-check every ColorAssignment invariant from scratch."""
    if len(a.mapping) != len(h.edges):
        return False
    if len(set(a.mapping)) != len(a.mapping):
        return False
    for (u, v), color in zip(h.edges, a.mapping):
        if not (0 <= color < c.m) or not c.graphs[color].has_edge(u, v):
            return False
    if a.mode is Mode.TRANSVERSAL:
        return len(h.edges) == c.m and set(a.mapping) == set(range(c.m))
    return True
