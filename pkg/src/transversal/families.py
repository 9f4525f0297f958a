"""Extremal collections without transversal Hamilton cycles or paths.

Generators build each family on a canonical vertex labeling. The classifier
recognises a family by searching for a witness (partition plus any
distinguished vertices or colors), and certificates re-check a short reason
why no transversal Hamilton cycle/path can exist.
"""

from __future__ import annotations

import enum
import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

from .core import DomainError, Graph, GraphCollection, Partition, bits

__all__ = [
    "Tag",
    "Reason",
    "Fill",
    "Witness",
    "ExtremalClass",
    "ExtremalCertificate",
    "RainbowStar",
    "CYCLE_TAGS",
    "PATH_TAGS",
    "generate_h_s_t",
    "generate_half_split",
    "generate_thm3_family",
    "generate_thm5_family",
    "generate_family",
    "family_parity_ok",
    "matches",
    "classify",
    "witness_for",
    "has_rainbow_two_matching",
    "certify_no_thc",
    "verify_certificate",
    "COROLLARY_VARIANTS",
    "single_graph_corollary_families",
    "corollary_graph",
    "corollary_strategic_edge",
    "extract_rainbow_stars",
    "validate_stars",
    "star_hypotheses_hold",
]

EXHAUSTIVE_PARTITION_LIMIT = 12


class Tag(str, enum.Enum):
    HALF_SPLIT = "half-split"
    DOM_VERTEX = "dom-vertex"
    HST = "hst"
    NEAR_SPLIT_B = "near-split-b"
    NO_R2M_TWO_CLIQUES = "no-r2m-two-cliques"
    NO_R2M_STAR_U = "no-r2m-star-u"
    NO_R2M_FIG1A = "no-r2m-fig1a"
    NO_R2M_FIG1B = "no-r2m-fig1b"
    HPATH_HN10 = "hpath-hn10"
    HPATH_NEAR_SPLIT = "hpath-near-split"
    UNKNOWN = "unknown"

    @property
    def family(self) -> str:
        return _FAMILY_NAMES[self]


_FAMILY_NAMES = {
    Tag.HALF_SPLIT: "HalfSplit",
    Tag.DOM_VERTEX: "DominatingVertexTwoCliques",
    Tag.HST: "HstSpanningOddT",
    Tag.NEAR_SPLIT_B: "NearSplitSparseB",
    Tag.NO_R2M_TWO_CLIQUES: "NoRainbowTwoMatching(TwoCliquesOneFree)",
    Tag.NO_R2M_STAR_U: "NoRainbowTwoMatching(StarThroughU)",
    Tag.NO_R2M_FIG1A: "NoRainbowTwoMatching(CrossPairFig1a)",
    Tag.NO_R2M_FIG1B: "NoRainbowTwoMatching(SwapPairFig1b)",
    Tag.HPATH_HN10: "HPathHn10",
    Tag.HPATH_NEAR_SPLIT: "HPathNearSplit",
    Tag.UNKNOWN: "Unknown",
}

ODD_CYCLE_TAGS = (Tag.HALF_SPLIT, Tag.DOM_VERTEX)
EVEN_CYCLE_TAGS = (
    Tag.HST,
    Tag.NEAR_SPLIT_B,
    Tag.NO_R2M_TWO_CLIQUES,
    Tag.NO_R2M_STAR_U,
    Tag.NO_R2M_FIG1A,
    Tag.NO_R2M_FIG1B,
)
CYCLE_TAGS = ODD_CYCLE_TAGS + EVEN_CYCLE_TAGS
PATH_TAGS = (Tag.HPATH_HN10, Tag.HPATH_NEAR_SPLIT)
NO_R2M_TAGS = (Tag.NO_R2M_TWO_CLIQUES, Tag.NO_R2M_STAR_U, Tag.NO_R2M_FIG1A, Tag.NO_R2M_FIG1B)


class Reason(str, enum.Enum):
    INDEPENDENT_SET_TOO_LARGE = "IndependentSetTooLarge"
    CUT_VERTEX = "CutVertexArgument"
    PARITY_OF_CROSS_EDGES = "ParityOfCrossEdges"
    SEGMENT_COUNT = "SegmentCount"
    NO_TWO_DISJOINT_RAINBOW_CROSS_EDGES = "NoTwoDisjointRainbowCrossEdges"


REASON_FOR = {
    Tag.HALF_SPLIT: Reason.INDEPENDENT_SET_TOO_LARGE,
    Tag.DOM_VERTEX: Reason.CUT_VERTEX,
    Tag.HST: Reason.PARITY_OF_CROSS_EDGES,
    Tag.NEAR_SPLIT_B: Reason.SEGMENT_COUNT,
    Tag.NO_R2M_TWO_CLIQUES: Reason.NO_TWO_DISJOINT_RAINBOW_CROSS_EDGES,
    Tag.NO_R2M_STAR_U: Reason.NO_TWO_DISJOINT_RAINBOW_CROSS_EDGES,
    Tag.NO_R2M_FIG1A: Reason.NO_TWO_DISJOINT_RAINBOW_CROSS_EDGES,
    Tag.NO_R2M_FIG1B: Reason.NO_TWO_DISJOINT_RAINBOW_CROSS_EDGES,
    Tag.HPATH_HN10: Reason.PARITY_OF_CROSS_EDGES,
    Tag.HPATH_NEAR_SPLIT: Reason.SEGMENT_COUNT,
}


class Fill(str, enum.Enum):
    EMPTY = "empty"
    COMPLETE = "complete"
    RANDOM = "random"


@dataclass(frozen=True)
class Witness:
    """Partition sides plus named distinguished vertices and colors."""

    a_side: tuple[int, ...]
    b_side: tuple[int, ...]
    vertices: tuple[tuple[str, int], ...] = ()
    colors: tuple[int, ...] = ()
    t: Optional[int] = None

    def vertex(self, name: str) -> int:
        return dict(self.vertices)[name]

    @property
    def partition(self) -> Partition:
        return Partition(frozenset(self.a_side), frozenset(self.b_side))

    @property
    def a_mask(self) -> int:
        return _mask(self.a_side)

    @property
    def b_mask(self) -> int:
        return _mask(self.b_side)

    def to_dict(self) -> dict:
        out: dict = {"a_side": list(self.a_side), "b_side": list(self.b_side)}
        if self.vertices:
            out["vertices"] = dict(self.vertices)
        if self.colors:
            out["colors"] = list(self.colors)
        if self.t is not None:
            out["t"] = self.t
        return out


@dataclass(frozen=True)
class ExtremalClass:
    tag: Tag
    witness: Optional[Witness] = None

    def __post_init__(self) -> None:
        if (self.tag is Tag.UNKNOWN) != (self.witness is None):
            raise DomainError("a witness is required exactly when the tag is known")

    @property
    def name(self) -> str:
        if self.tag is Tag.HST and self.witness is not None:
            return f"HstSpanningOddT({self.witness.t})"
        return self.tag.family

    def to_dict(self) -> dict:
        out: dict = {"tag": self.tag.value, "family": self.name}
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        return out


@dataclass(frozen=True)
class ExtremalCertificate:
    cls: ExtremalClass
    reason: Reason
    details: tuple[tuple[str, object], ...] = field(default=())

    def to_dict(self) -> dict:
        return {"class": self.cls.to_dict(), "reason": self.reason.value, "details": dict(self.details)}


# -- small bit helpers -------------------------------------------------------


def _mask(vs: Sequence[int]) -> int:
    out = 0
    for v in vs:
        out |= 1 << v
    return out


def _side(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


def _add_clique(rows: list[int], mask: int) -> None:
    for v in bits(mask):
        rows[v] |= mask & ~(1 << v)


def _add_biclique(rows: list[int], a: int, b: int) -> None:
    for v in bits(a):
        rows[v] |= b
    for v in bits(b):
        rows[v] |= a


def _add_edge(rows: list[int], u: int, v: int) -> None:
    rows[u] |= 1 << v
    rows[v] |= 1 << u


def _add_fill(rows: list[int], mask: int, fill: Fill, rng: random.Random) -> None:
    if fill is Fill.COMPLETE:
        _add_clique(rows, mask)
    elif fill is Fill.RANDOM:
        for u, v in itertools.combinations(bits(mask), 2):
            if rng.random() < 0.5:
                _add_edge(rows, u, v)


def _add_random_cross(rows: list[int], a: int, b: int, fill: Fill, rng: random.Random) -> None:
    if fill is Fill.COMPLETE:
        _add_biclique(rows, a, b)
    elif fill is Fill.RANDOM:
        for u in bits(a):
            for v in bits(b):
                if rng.random() < 0.5:
                    _add_edge(rows, u, v)


def _two_cliques_rows(n: int, a: int, b: int) -> list[int]:
    rows = [0] * n
    _add_clique(rows, a)
    _add_clique(rows, b)
    return rows


def _g(n: int, rows: list[int]) -> Graph:
    return Graph(n, tuple(rows))


def _full(n: int) -> int:
    return (1 << n) - 1


def _is_two_cliques(g: Graph, a: int, b: int) -> bool:
    return all(g.adjacency[v] == a & ~(1 << v) for v in bits(a)) and all(
        g.adjacency[v] == b & ~(1 << v) for v in bits(b)
    )


def _cross(g: Graph, a: int, b: int) -> list[tuple[int, int]]:
    return [(u, v) for u in bits(a) for v in bits(g.adjacency[u] & b)]


def _inside_pairs(g: Graph, mask: int) -> list[tuple[int, int]]:
    return [(u, v) for u in bits(mask) for v in bits(g.adjacency[u] & mask) if u < v]


def _components(rows: Sequence[int], mask: int) -> list[int]:
    comps = []
    left = mask
    while left:
        start = left & -left
        comp = frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= rows[v] & mask
            frontier = nxt & ~comp
            comp |= frontier
        comps.append(comp)
        left &= ~comp
    return comps


def _bipartition(rows: Sequence[int], n: int) -> Optional[int]:
    """One side of a proper 2-coloring of a connected graph, if bipartite."""
    side = [-1] * n
    side[0] = 0
    stack = [0]
    while stack:
        v = stack.pop()
        for u in bits(rows[v]):
            if side[u] < 0:
                side[u] = 1 - side[v]
                stack.append(u)
            elif side[u] == side[v]:
                return None
    if -1 in side:
        return None
    return _mask([v for v in range(n) if side[v] == 0])


# -- generators --------------------------------------------------------------


def _halves(n: int) -> tuple[int, int]:
    a = _mask(range((n + 1) // 2))
    return a, _full(n) & ~a


def _h_collection(n: int, s: int, t: int) -> GraphCollection:
    a, b = _halves(n)
    clique = _g(n, _two_cliques_rows(n, a, b))
    rows = [0] * n
    _add_biclique(rows, a, b)
    bip = _g(n, rows)
    return GraphCollection(n, (clique,) * s + (bip,) * t)


def generate_h_s_t(n: int, s: int, t: int) -> GraphCollection:
    """``s`` copies of two cliques then ``t`` copies of the complete bipartite graph."""
    if n < 2 or s < 0 or t < 0 or s + t != n:
        raise DomainError(f"need s + t = n >= 2 with s, t >= 0, got n={n}, s={s}, t={t}")
    return _h_collection(n, s, t)


def generate_half_split(n: int, fill: Fill | str = Fill.COMPLETE, seed: Optional[int] = None) -> GraphCollection:
    """Half-split collection: the larger half is independent, cross graphs complete."""
    fill = Fill(fill)
    if n < 3 or n % 2 == 0:
        raise DomainError(f"half-split collections are generated for odd n >= 3, got {n}")
    rng = random.Random(seed)
    a, b = _halves(n)
    graphs = []
    for _ in range(n):
        rows = [0] * n
        _add_biclique(rows, a, b)
        _add_fill(rows, b, fill, rng)
        graphs.append(_g(n, rows))
    return GraphCollection.of(n, graphs)


def _need_parity(tag: Tag, n: int, even: bool, minimum: int) -> None:
    if n < minimum or (n % 2 == 0) != even:
        parity = "even" if even else "odd"
        raise DomainError(f"{tag.value} needs {parity} n >= {minimum}, got {n}")


def _check_vertices(n: int, vs: Sequence[int], sides: Sequence[int]) -> None:
    if len(set(vs)) != len(vs):
        raise DomainError("distinguished vertices must be distinct")
    for v, side in zip(vs, sides):
        if not (0 <= v < n and side >> v & 1):
            raise DomainError(f"vertex {v} is not on its required side")


def generate_thm3_family(tag: Tag | str, n: int, fill: Fill | str = Fill.COMPLETE,
                         seed: Optional[int] = None, **params) -> GraphCollection:
    """Generate an n-color family on ``n`` vertices with no transversal Hamilton cycle.

    Parameters by tag (defaults in brackets):
      dom-vertex: ``u`` [0]
      hst: ``t`` odd [1]
      near-split-b: ``exceptional`` color whose B-part takes ``fill`` [none],
        or ``pair`` (u, v) inside B present in every color [none]
      no-r2m-two-cliques: ``exceptional`` color [n - 1]
      no-r2m-star-u: ``u`` in A [0]
      no-r2m-fig1a: ``u`` in A [0], ``v`` in B [n/2], ``exceptional`` color [0]
      no-r2m-fig1b: ``u, u2`` in A [0, 1], ``v, v2`` in B [n/2, n/2 + 1],
        ``colors`` (first, second) [(0, 1)]
    Free parts (cliques left unconstrained by the structure) follow ``fill``.
    """
    tag = Tag(tag)
    fill = Fill(fill)
    rng = random.Random(seed)
    if tag is Tag.HALF_SPLIT:
        return generate_half_split(n, fill, seed)

    if tag is Tag.DOM_VERTEX:
        _need_parity(tag, n, even=False, minimum=3)
        u = params.get("u", 0)
        if not 0 <= u < n:
            raise DomainError(f"u={u} out of range")
        rest = [v for v in range(n) if v != u]
        a, b = _mask(rest[: (n - 1) // 2]), _mask(rest[(n - 1) // 2:])
        rows = _two_cliques_rows(n, a, b)
        _add_biclique(rows, 1 << u, a | b)
        return GraphCollection.copies(_g(n, rows), n)

    if tag is Tag.HST:
        _need_parity(tag, n, even=True, minimum=2)
        t = params.get("t", 1)
        if t % 2 == 0 or not 1 <= t <= n:
            raise DomainError(f"hst needs an odd t in [1, n], got {t}")
        return generate_h_s_t(n, n - t, t)

    if tag is Tag.NEAR_SPLIT_B:
        _need_parity(tag, n, even=True, minimum=4)
        a = _mask(range(n // 2 - 1))
        b = _full(n) & ~a
        exceptional = params.get("exceptional")
        pair = params.get("pair")
        if exceptional is not None and pair is not None:
            raise DomainError("near-split-b takes an exceptional color or a pair, not both")
        if pair is not None:
            _check_vertices(n, pair, (b, b))
        graphs = []
        for i in range(n):
            rows = [0] * n
            _add_biclique(rows, a, b)
            _add_fill(rows, a, fill, rng)
            if i == exceptional:
                _add_fill(rows, b, fill, rng)
            if pair is not None:
                _add_edge(rows, *pair)
            graphs.append(_g(n, rows))
        return GraphCollection.of(n, graphs)

    _need_parity(tag, n, even=True, minimum=4)
    a, b = _halves(n)
    half = n // 2

    if tag is Tag.NO_R2M_TWO_CLIQUES:
        e = params.get("exceptional", n - 1)
        if not 0 <= e < n:
            raise DomainError(f"exceptional color {e} out of range")
        graphs = []
        for i in range(n):
            rows = _two_cliques_rows(n, a, b)
            if i == e:
                _add_random_cross(rows, a, b, fill, rng)
            graphs.append(_g(n, rows))
        return GraphCollection.of(n, graphs)

    if tag is Tag.NO_R2M_STAR_U:
        u = params.get("u", 0)
        _check_vertices(n, [u], [a])
        graphs = []
        for _ in range(n):
            rows = _two_cliques_rows(n, a, b)
            _add_random_cross(rows, 1 << u, b, fill, rng)
            graphs.append(_g(n, rows))
        return GraphCollection.of(n, graphs)

    if tag is Tag.NO_R2M_FIG1A:
        u, v = params.get("u", 0), params.get("v", half)
        e = params.get("exceptional", 0)
        _check_vertices(n, [u, v], [a, b])
        if not 0 <= e < n:
            raise DomainError(f"exceptional color {e} out of range")
        graphs = []
        for i in range(n):
            rows = _two_cliques_rows(n, a, b)
            if i == e:
                _add_random_cross(rows, 1 << u, b, fill, rng)
                _add_random_cross(rows, a, 1 << v, fill, rng)
            _add_edge(rows, u, v)
            graphs.append(_g(n, rows))
        return GraphCollection.of(n, graphs)

    if tag is Tag.NO_R2M_FIG1B:
        u, u2 = params.get("u", 0), params.get("u2", 1)
        v, v2 = params.get("v", half), params.get("v2", half + 1)
        first, second = params.get("colors", (0, 1))
        _check_vertices(n, [u, u2, v, v2], [a, a, b, b])
        if first == second or not (0 <= first < n and 0 <= second < n):
            raise DomainError("fig1b needs two distinct colors")
        graphs = []
        for i in range(n):
            rows = _two_cliques_rows(n, a, b)
            if i == first:
                _add_edge(rows, u, v)
                _add_edge(rows, u2, v2)
            elif i == second:
                _add_edge(rows, u, v2)
                _add_edge(rows, u2, v)
            graphs.append(_g(n, rows))
        return GraphCollection.of(n, graphs)

    raise DomainError(f"{tag.value} is not a Hamilton-cycle family")


def generate_thm5_family(tag: Tag | str, n: int, fill: Fill | str = Fill.COMPLETE,
                         seed: Optional[int] = None, **params) -> GraphCollection:
    """Generate an (n-1)-color family with no transversal Hamilton path.

    hpath-hn10: n - 1 copies of the two-clique graph on the equitable split.
    hpath-near-split: an independent side of size n/2 + 1 (n even) or
    (n + 3)/2 (n odd), complete cross graphs, the other side per ``fill``.
    For odd n, ``exceptional`` or ``pair`` may place edges in the sparse side.
    """
    tag = Tag(tag)
    fill = Fill(fill)
    rng = random.Random(seed)
    if tag is Tag.HPATH_HN10:
        if n < 2:
            raise DomainError("hpath-hn10 needs n >= 2")
        return _h_collection(n, n - 1, 0)
    if tag is Tag.HPATH_NEAR_SPLIT:
        if n < 4:
            raise DomainError("hpath-near-split needs n >= 4")
        size = n // 2 + 1 if n % 2 == 0 else (n + 3) // 2
        a = _mask(range(size))
        b = _full(n) & ~a
        exceptional = params.get("exceptional")
        pair = params.get("pair")
        if n % 2 == 0 and (exceptional is not None or pair is not None):
            raise DomainError("even n hpath-near-split has an independent side; no exceptions")
        if exceptional is not None and pair is not None:
            raise DomainError("give an exceptional color or a pair, not both")
        if pair is not None:
            _check_vertices(n, pair, (a, a))
        graphs = []
        for i in range(n - 1):
            rows = [0] * n
            _add_biclique(rows, a, b)
            _add_fill(rows, b, fill, rng)
            if i == exceptional:
                _add_fill(rows, a, fill, rng)
            if pair is not None:
                _add_edge(rows, *pair)
            graphs.append(_g(n, rows))
        return GraphCollection.of(n, graphs)
    raise DomainError(f"{tag.value} is not a Hamilton-path family")


def family_parity_ok(tag: Tag | str, n: int) -> bool:
    tag = Tag(tag)
    if tag in ODD_CYCLE_TAGS:
        return n % 2 == 1 and n >= 3
    if tag is Tag.HST:
        return n % 2 == 0 and n >= 2
    if tag in EVEN_CYCLE_TAGS:
        return n % 2 == 0 and n >= 4
    if tag is Tag.HPATH_NEAR_SPLIT:
        return n >= 4
    if tag is Tag.HPATH_HN10:
        return n >= 2
    return False


def generate_family(tag: Tag | str, n: int, fill: Fill | str = Fill.COMPLETE,
                    seed: Optional[int] = None, **params) -> GraphCollection:
    tag = Tag(tag)
    if tag in PATH_TAGS:
        return generate_thm5_family(tag, n, fill, seed, **params)
    if tag is Tag.UNKNOWN:
        raise DomainError("cannot generate the unknown family")
    return generate_thm3_family(tag, n, fill, seed, **params)


# -- structural predicates ---------------------------------------------------


def _check_half_split(c: GraphCollection, w: Witness) -> bool:
    n, a, b = c.n, w.a_mask, w.b_mask
    if n % 2 == 0 or len(w.a_side) != (n + 1) // 2 or a | b != _full(n) or a & b:
        return False
    return all(g.adjacency[v] & a == 0 and g.adjacency[v] & b == b for g in c for v in bits(a))


def _check_dom_vertex(c: GraphCollection, w: Witness) -> bool:
    n = c.n
    u = w.vertex("u")
    a, b = w.a_mask, w.b_mask
    if n % 2 == 0 or len(w.a_side) != len(w.b_side) or a | b | 1 << u != _full(n) or a & b or (a | b) >> u & 1:
        return False
    rest = _full(n) & ~(1 << u)
    for g in c:
        if g.adjacency[u] != rest:
            return False
        if not all(g.adjacency[v] & rest == a & ~(1 << v) for v in bits(a)):
            return False
        if not all(g.adjacency[v] & rest == b & ~(1 << v) for v in bits(b)):
            return False
    return True


def _color_types(c: GraphCollection, a: int, b: int) -> Optional[tuple[int, int]]:
    """(colors confined to the two sides, colors confined to the cross graph).

    Empty colors count in neither. ``None`` when some color has both kinds.
    """
    inside = cross = 0
    for g in c:
        has_cross = any(g.adjacency[v] & b for v in bits(a))
        has_inside = any(g.adjacency[v] & a for v in bits(a)) or any(g.adjacency[v] & b for v in bits(b))
        if has_cross and has_inside:
            return None
        inside += has_inside
        cross += has_cross
    return inside, cross


def _odd_t(c: GraphCollection, a: int, b: int) -> Optional[int]:
    types = _color_types(c, a, b)
    if types is None:
        return None
    inside, cross = types
    empty = c.m - inside - cross
    for t in range(cross, cross + empty + 1):
        if t % 2 == 1:
            return t
    return None


def _check_hst(c: GraphCollection, w: Witness) -> bool:
    n, a, b = c.n, w.a_mask, w.b_mask
    if n % 2 or c.m != n or len(w.a_side) != n // 2 or a | b != _full(n) or a & b:
        return False
    return w.t is not None and w.t % 2 == 1 and _odd_t(c, a, b) is not None and _t_feasible(c, a, b, w.t)


def _t_feasible(c: GraphCollection, a: int, b: int, t: int) -> bool:
    types = _color_types(c, a, b)
    if types is None:
        return False
    inside, cross = types
    return cross <= t <= c.m - inside


def _sparse_side_ok(c: GraphCollection, sparse: int) -> bool:
    """Sparse side is independent in all but one color, or only ever spans one pair."""
    with_edges = [i for i, g in enumerate(c) if _inside_pairs(g, sparse)]
    if len(with_edges) <= 1:
        return True
    pairs = {p for g in c for p in _inside_pairs(g, sparse)}
    return len(pairs) <= 1


def _check_near_split(c: GraphCollection, w: Witness) -> bool:
    n, a, b = c.n, w.a_mask, w.b_mask
    if n % 2 or len(w.a_side) != n // 2 - 1 or a | b != _full(n) or a & b:
        return False
    return _sparse_side_ok(c, b)


def _equitable_even(c: GraphCollection, w: Witness) -> bool:
    n = c.n
    return n % 2 == 0 and len(w.a_side) == len(w.b_side) == n // 2 and w.a_mask | w.b_mask == _full(n)


def _check_two_cliques(c: GraphCollection, w: Witness) -> bool:
    if not _equitable_even(c, w):
        return False
    a, b = w.a_mask, w.b_mask
    odd = [i for i, g in enumerate(c) if not _is_two_cliques(g, a, b)]
    return len(odd) <= 1 and list(w.colors) == odd


def _check_star_u(c: GraphCollection, w: Witness) -> bool:
    if not _equitable_even(c, w):
        return False
    a, b, u = w.a_mask, w.b_mask, w.vertex("u")
    if not a >> u & 1:
        return False
    return all(x == u for g in c for x, _ in _cross(g, a, b))


def _check_fig1a(c: GraphCollection, w: Witness) -> bool:
    if not _equitable_even(c, w):
        return False
    a, b = w.a_mask, w.b_mask
    u, v = w.vertex("u"), w.vertex("v")
    (e,) = w.colors
    if not (a >> u & 1 and b >> v & 1):
        return False
    for i, g in enumerate(c):
        for x, y in _cross(g, a, b):
            if i == e:
                if x != u and y != v:
                    return False
            elif (x, y) != (u, v):
                return False
    return True


def _check_fig1b(c: GraphCollection, w: Witness) -> bool:
    if not _equitable_even(c, w):
        return False
    a, b = w.a_mask, w.b_mask
    u, u2, v, v2 = (w.vertex(k) for k in ("u", "u2", "v", "v2"))
    first, second = w.colors
    if not (a >> u & 1 and a >> u2 & 1 and b >> v & 1 and b >> v2 & 1) or u == u2 or v == v2:
        return False
    for i, g in enumerate(c):
        cross = set(_cross(g, a, b))
        if i == first:
            if cross != {(u, v), (u2, v2)}:
                return False
        elif i == second:
            if cross != {(u, v2), (u2, v)}:
                return False
        elif not _is_two_cliques(g, a, b):
            return False
    return True


def _check_hpath_hn10(c: GraphCollection, w: Witness) -> bool:
    n, a, b = c.n, w.a_mask, w.b_mask
    if c.m != n - 1 or len(w.a_side) != (n + 1) // 2 or a | b != _full(n) or a & b:
        return False
    if n % 2 == 0:
        return all(_is_two_cliques(g, a, b) for g in c)
    return all(not _cross(g, a, b) for g in c)


def _check_hpath_near_split(c: GraphCollection, w: Witness) -> bool:
    n, a, b = c.n, w.a_mask, w.b_mask
    size = n // 2 + 1 if n % 2 == 0 else (n + 3) // 2
    if c.m != n - 1 or len(w.a_side) != size or a | b != _full(n) or a & b:
        return False
    if n % 2 == 0:
        return all(not _inside_pairs(g, a) for g in c)
    return _sparse_side_ok(c, a)


_CHECKS: dict[Tag, Callable[[GraphCollection, Witness], bool]] = {
    Tag.HALF_SPLIT: _check_half_split,
    Tag.DOM_VERTEX: _check_dom_vertex,
    Tag.HST: _check_hst,
    Tag.NEAR_SPLIT_B: _check_near_split,
    Tag.NO_R2M_TWO_CLIQUES: _check_two_cliques,
    Tag.NO_R2M_STAR_U: _check_star_u,
    Tag.NO_R2M_FIG1A: _check_fig1a,
    Tag.NO_R2M_FIG1B: _check_fig1b,
    Tag.HPATH_HN10: _check_hpath_hn10,
    Tag.HPATH_NEAR_SPLIT: _check_hpath_near_split,
}


def matches(c: GraphCollection, cls: ExtremalClass) -> bool:
    """Does the class's structural predicate hold of ``c`` with its witness?"""
    if cls.tag is Tag.UNKNOWN or cls.witness is None:
        return False
    if cls.tag in CYCLE_TAGS and c.m != c.n:
        return False
    try:
        return _CHECKS[cls.tag](c, cls.witness)
    except (KeyError, ValueError):
        return False


# -- witness search ----------------------------------------------------------


def _candidate_sides(c: GraphCollection, size: int) -> Iterator[int]:
    """Vertex sets of the given size, structure-guided first.

    Guided sources: components of each color and of the union graph (after
    deleting at most one vertex), bipartitions of connected bipartite colors,
    and (closed) neighborhoods and their complements. Up to
    ``EXHAUSTIVE_PARTITION_LIMIT`` vertices every subset follows.
    """
    n = c.n
    full = _full(n)
    seen: set[int] = set()
    graphs = [c.union_graph()] + list(c.graphs)

    def emit(mask: int) -> Iterator[int]:
        for cand in (mask, full & ~mask):
            if cand.bit_count() == size and cand not in seen:
                seen.add(cand)
                yield cand

    for g in graphs:
        rows = g.adjacency
        comps = _components(rows, full)
        if 2 <= len(comps) <= 6:
            for r in range(1, len(comps)):
                for group in itertools.combinations(comps, r):
                    yield from emit(sum(group))
        if len(comps) == 1 and n:
            side = _bipartition(rows, n)
            if side is not None:
                yield from emit(side)
        for v in range(n):
            nb = rows[v]
            yield from emit(nb)
            yield from emit(nb | 1 << v)
    for g in graphs:
        for v in range(n):
            comps = _components(g.adjacency, full & ~(1 << v))
            if len(comps) == 2:
                for comp in comps:
                    yield from emit(comp)
                    yield from emit(comp | 1 << v)
    if n <= EXHAUSTIVE_PARTITION_LIMIT:
        for combo in itertools.combinations(range(n), size):
            yield from emit(_mask(combo))


def _witness(a: int, b: int, **kw) -> Witness:
    return Witness(_side(a), _side(b), **kw)


def _find_half_split(c: GraphCollection) -> Optional[Witness]:
    n = c.n
    union = c.union_graph()
    for v in range(n):
        a = _full(n) & ~union.adjacency[v]
        w = _witness(a, _full(n) & ~a)
        if _check_half_split(c, w):
            return w
    return None


def _find_dom_vertex(c: GraphCollection) -> Optional[Witness]:
    n = c.n
    if c.m == 0:
        return None
    for u in range(n):
        rest = _full(n) & ~(1 << u)
        if any(g.adjacency[u] != rest for g in c):
            continue
        comps = _components(c.graphs[0].adjacency, rest)
        if len(comps) != 2:
            continue
        a, b = sorted(comps, key=lambda m: (m & -m))
        w = _witness(a, b, vertices=(("u", u),))
        if _check_dom_vertex(c, w):
            return w
    return None


def _find_hst(c: GraphCollection) -> Optional[Witness]:
    n = c.n
    for a in _candidate_sides(c, n // 2):
        b = _full(n) & ~a
        t = _odd_t(c, a, b)
        if t is not None:
            return _witness(a, b, t=t)
    return None


def _find_near_split(c: GraphCollection) -> Optional[Witness]:
    n = c.n
    for a in _candidate_sides(c, n // 2 - 1):
        w = _witness(a, _full(n) & ~a)
        if _check_near_split(c, w):
            return w
    return None


def _equitable_sides(c: GraphCollection) -> Iterator[tuple[int, int]]:
    full = _full(c.n)
    for a in _candidate_sides(c, c.n // 2):
        yield a, full & ~a


def _two_cliques_witness(c: GraphCollection, a: int, b: int) -> Optional[Witness]:
    odd = [i for i, g in enumerate(c) if not _is_two_cliques(g, a, b)]
    if len(odd) <= 1:
        lo, hi = sorted((a, b), key=lambda m: m & -m)
        return _witness(lo, hi, colors=tuple(odd))
    return None


def _star_witness(c: GraphCollection, a: int, b: int) -> Optional[Witness]:
    edges = [e for g in c for e in _cross(g, a, b)]
    common = _full(c.n)
    for x, y in edges:
        common &= 1 << x | 1 << y
    if not common:
        return None
    u = (common & -common).bit_length() - 1
    if not a >> u & 1:
        a, b = b, a
    return _witness(a, b, vertices=(("u", u),))


def _fig1a_witness(c: GraphCollection, a: int, b: int) -> Optional[Witness]:
    for lo, hi in ((a, b), (b, a)):
        for e in range(c.m):
            others = {edge for i, g in enumerate(c) if i != e for edge in _cross(g, lo, hi)}
            if len(others) > 1:
                continue
            pairs = list(others) if others else [(u, v) for u in bits(lo) for v in bits(hi)]
            for u, v in pairs:
                w = _witness(lo, hi, vertices=(("u", u), ("v", v)), colors=(e,))
                if _check_fig1a(c, w):
                    return w
    return None


def _fig1b_witness(c: GraphCollection, a: int, b: int) -> Optional[Witness]:
    crossing = [(i, _cross(g, a, b)) for i, g in enumerate(c) if _cross(g, a, b)]
    if len(crossing) != 2:
        return None
    (first, e1), (second, e2) = crossing
    if len(e1) != 2 or len(e2) != 2:
        return None
    (u, v), (u2, v2) = sorted(e1)
    w = _witness(a, b, vertices=(("u", u), ("u2", u2), ("v", v), ("v2", v2)), colors=(first, second))
    return w if _check_fig1b(c, w) else None


_NO_R2M_FINDERS = {
    Tag.NO_R2M_TWO_CLIQUES: _two_cliques_witness,
    Tag.NO_R2M_STAR_U: _star_witness,
    Tag.NO_R2M_FIG1A: _fig1a_witness,
    Tag.NO_R2M_FIG1B: _fig1b_witness,
}


def _find_hpath_hn10(c: GraphCollection) -> Optional[Witness]:
    n = c.n
    for a in _candidate_sides(c, (n + 1) // 2):
        w = _witness(a, _full(n) & ~a)
        if _check_hpath_hn10(c, w):
            return w
    return None


def _find_hpath_near_split(c: GraphCollection) -> Optional[Witness]:
    n = c.n
    size = n // 2 + 1 if n % 2 == 0 else (n + 3) // 2
    if size > n:
        return None
    for a in _candidate_sides(c, size):
        w = _witness(a, _full(n) & ~a)
        if _check_hpath_near_split(c, w):
            return w
    return None


def classify(c: GraphCollection) -> ExtremalClass:
    """First matching family in the theorems' listed order, else Unknown.

    ``m = n`` selects the Hamilton-cycle families for the parity of ``n``;
    ``m = n - 1`` selects the Hamilton-path families.
    """
    n = c.n
    if n >= 3 and c.m == n:
        if n % 2 == 1:
            for tag, finder in ((Tag.HALF_SPLIT, _find_half_split), (Tag.DOM_VERTEX, _find_dom_vertex)):
                w = finder(c)
                if w is not None:
                    return ExtremalClass(tag, w)
            return ExtremalClass(Tag.UNKNOWN)
        w = _find_hst(c)
        if w is not None:
            return ExtremalClass(Tag.HST, w)
        if n >= 4:
            w = _find_near_split(c)
            if w is not None:
                return ExtremalClass(Tag.NEAR_SPLIT_B, w)
            sides = list(_equitable_sides(c))
            for tag, finder in _NO_R2M_FINDERS.items():
                for a, b in sides:
                    w = finder(c, a, b)
                    if w is not None:
                        return ExtremalClass(tag, w)
        return ExtremalClass(Tag.UNKNOWN)
    if n >= 2 and c.m == n - 1:
        w = _find_hpath_hn10(c)
        if w is not None:
            return ExtremalClass(Tag.HPATH_HN10, w)
        if n >= 4:
            w = _find_hpath_near_split(c)
            if w is not None:
                return ExtremalClass(Tag.HPATH_NEAR_SPLIT, w)
    return ExtremalClass(Tag.UNKNOWN)


def witness_for(c: GraphCollection, tag: Tag | str) -> ExtremalClass:
    """Search for a witness of one specific family, ignoring the listed order."""
    tag = Tag(tag)
    n = c.n
    if tag in CYCLE_TAGS and (c.m != n or n < 3) or tag in PATH_TAGS and (c.m != n - 1 or n < 2):
        return ExtremalClass(Tag.UNKNOWN)
    if tag in NO_R2M_TAGS:
        w = None
        if n % 2 == 0 and n >= 4:
            finder = _NO_R2M_FINDERS[tag]
            w = next((x for a, b in _equitable_sides(c) if (x := finder(c, a, b)) is not None), None)
    else:
        finders = {
            Tag.HALF_SPLIT: _find_half_split,
            Tag.DOM_VERTEX: _find_dom_vertex,
            Tag.HST: _find_hst,
            Tag.NEAR_SPLIT_B: _find_near_split,
            Tag.HPATH_HN10: _find_hpath_hn10,
            Tag.HPATH_NEAR_SPLIT: _find_hpath_near_split,
        }
        parity_ok = {
            Tag.HALF_SPLIT: n % 2 == 1,
            Tag.DOM_VERTEX: n % 2 == 1,
            Tag.HST: n % 2 == 0,
            Tag.NEAR_SPLIT_B: n % 2 == 0 and n >= 4,
            Tag.HPATH_HN10: True,
            Tag.HPATH_NEAR_SPLIT: n >= 4,
        }
        w = finders[tag](c) if tag in finders and parity_ok[tag] else None
    return ExtremalClass(Tag.UNKNOWN) if w is None else ExtremalClass(tag, w)


# -- certificates ------------------------------------------------------------


def has_rainbow_two_matching(c: GraphCollection, p: Partition) -> bool:
    """Two vertex-disjoint cross edges that can take two distinct colors."""
    a, b = p.a_mask, p.b_mask
    masks: dict[tuple[int, int], int] = {}
    for i, g in enumerate(c):
        for e in _cross(g, a, b):
            masks[e] = masks.get(e, 0) | 1 << i
    edges = sorted(masks)
    for (x1, y1), (x2, y2) in itertools.combinations(edges, 2):
        if x1 == x2 or y1 == y2:
            continue
        m1, m2 = masks[(x1, y1)], masks[(x2, y2)]
        if not (m1 == m2 and m1.bit_count() == 1):
            return True
    return False


def _union_connected_without(c: GraphCollection, u: int) -> bool:
    rows = c.union_graph().adjacency
    rest = _full(c.n) & ~(1 << u)
    return len(_components(rows, rest)) <= 1


def _max_inside_edges(c: GraphCollection, sparse: int) -> int:
    """Upper bound on inside-``sparse`` edges of any rainbow subgraph."""
    colors = sum(1 for g in c if _inside_pairs(g, sparse))
    pairs = len({p for g in c for p in _inside_pairs(g, sparse)})
    return min(colors, pairs)


def verify_certificate(c: GraphCollection, cert: ExtremalCertificate) -> bool:
    """Re-derive the certificate's reason from the collection alone."""
    w = cert.cls.witness
    if w is None:
        return False
    n = c.n
    path = cert.cls.tag in PATH_TAGS
    if path and c.m != n - 1 or not path and c.m != n:
        return False
    a, b = w.a_mask, w.b_mask
    reason = cert.reason

    if reason is Reason.INDEPENDENT_SET_TOO_LARGE:
        union = c.union_graph()
        independent = all(union.adjacency[v] & a == 0 for v in bits(a))
        limit = (n + 1) // 2 if path else n // 2
        return independent and len(w.a_side) > limit

    if reason is Reason.CUT_VERTEX:
        return n >= 3 and not _union_connected_without(c, w.vertex("u"))

    if reason is Reason.PARITY_OF_CROSS_EDGES:
        if a | b != _full(n) or a & b or not a or not b:
            return False
        types = _color_types(c, a, b)
        if types is None:
            return False
        inside, cross = types
        if inside + cross < c.m:
            return True  # an empty color can never be used
        if path:
            return cross == 0
        return n % 2 == 0 and abs(len(w.a_side) - len(w.b_side)) <= 1 and cross % 2 == 1

    if reason is Reason.SEGMENT_COUNT:
        sparse, other = (a, b) if path else (b, a)
        if sparse | other != _full(n) or sparse & other:
            return False
        need = sparse.bit_count() - other.bit_count() - (1 if path else 0)
        return need > _max_inside_edges(c, sparse)

    if reason is Reason.NO_TWO_DISJOINT_RAINBOW_CROSS_EDGES:
        if path or a | b != _full(n) or a & b:
            return False
        if abs(len(w.a_side) - len(w.b_side)) > 1 or min(len(w.a_side), len(w.b_side)) < 2:
            return False
        return not has_rainbow_two_matching(c, w.partition)

    return False


def certify_no_thc(c: GraphCollection, cls: ExtremalClass) -> Optional[ExtremalCertificate]:
    """Issue the family's certificate after re-checking its predicate.

    Raises DomainError when ``cls`` is Unknown or its predicate fails on
    ``c``. Returns ``None`` if the reason does not re-verify.
    """
    if cls.tag is Tag.UNKNOWN:
        raise DomainError("no certificate for the unknown class")
    if not matches(c, cls):
        raise DomainError(f"{cls.name} predicate does not hold for this collection")
    w = cls.witness
    assert w is not None
    reason = REASON_FOR[cls.tag]
    details: dict[str, object] = {}
    if reason is Reason.INDEPENDENT_SET_TOO_LARGE:
        details = {"independent_set": list(w.a_side), "bound": c.n // 2}
    elif reason is Reason.CUT_VERTEX:
        details = {"cut_vertex": w.vertex("u")}
    elif reason is Reason.PARITY_OF_CROSS_EDGES:
        types = _color_types(c, w.a_mask, w.b_mask)
        details = {"cross_colors": types[1] if types else None}
    elif reason is Reason.SEGMENT_COUNT:
        sparse = w.a_mask if cls.tag in PATH_TAGS else w.b_mask
        details = {"sparse_side": list(_side(sparse)), "usable_inside_edges": _max_inside_edges(c, sparse)}
    cert = ExtremalCertificate(cls, reason, tuple(sorted(details.items())))
    return cert if verify_certificate(c, cert) else None


# -- single-graph corollary --------------------------------------------------

COROLLARY_VARIANTS = {
    "dom-two-cliques": 1,
    "independent-join": 1,
    "dom-unequal-cliques": 0,
    "edge-independent-join": 0,
}


def corollary_graph(n: int, variant: str) -> Graph:
    """The single graph behind one of the corollary's families.

    dom-two-cliques (odd n): one vertex joined to two cliques of size (n-1)/2.
    independent-join (odd n): (n+1)/2 independent vertices joined to a clique.
    dom-unequal-cliques (even n): one vertex joined to cliques of sizes n/2-1, n/2.
    edge-independent-join (even n): one edge plus n/2-1 isolated vertices,
    joined to a clique on n/2-1 vertices.
    """
    if variant not in COROLLARY_VARIANTS:
        raise DomainError(f"{variant!r} is not a corollary family")
    if n % 2 != COROLLARY_VARIANTS[variant] or n < 5:
        raise DomainError(f"{variant} needs {'odd' if COROLLARY_VARIANTS[variant] else 'even'} n >= 5, got {n}")
    rows = [0] * n
    full = _full(n)
    if variant in ("dom-two-cliques", "dom-unequal-cliques"):
        first = (n - 1) // 2
        a = _mask(range(1, 1 + first))
        b = full & ~a & ~1
        _add_clique(rows, a)
        _add_clique(rows, b)
        _add_biclique(rows, 1, a | b)
    else:
        size = (n + 1) // 2 if variant == "independent-join" else n // 2 + 1
        ind = _mask(range(size))
        k = full & ~ind
        _add_clique(rows, k)
        _add_biclique(rows, ind, k)
        if variant == "edge-independent-join":
            _add_edge(rows, 0, 1)
    return _g(n, rows)


def single_graph_corollary_families(n: int, variant: str) -> GraphCollection:
    return GraphCollection.copies(corollary_graph(n, variant), n)


def corollary_strategic_edge(n: int, variant: str) -> tuple[int, int]:
    """An added edge that makes the corollary graph Hamiltonian."""
    corollary_graph(n, variant)
    if variant in ("dom-two-cliques", "dom-unequal-cliques"):
        return 1, 1 + (n - 1) // 2
    if variant == "independent-join":
        return 0, 1
    return 2, 3


# -- disjoint rainbow stars --------------------------------------------------


@dataclass(frozen=True)
class RainbowStar:
    center: int
    leaves: tuple[int, int, int, int]
    colors: tuple[int, int, int, int]

    def to_dict(self) -> dict:
        return {"center": self.center, "leaves": list(self.leaves), "colors": list(self.colors)}


def _cross_degree(g: Graph, v: int, b: int) -> int:
    return (g.adjacency[v] & b).bit_count()


def star_hypotheses_hold(c: GraphCollection, y_side: Sequence[int], b_side: Sequence[int], t: int) -> bool:
    y, b = _mask(y_side), _mask(b_side)
    if y & b or len(set(y_side)) != len(y_side) or len(set(b_side)) != len(b_side):
        return False
    ny, nb, m = len(y_side), len(b_side), c.m
    if not (7 * ny < nb and 5 * nb <= 3 * m and 1 <= t <= ny):
        return False
    total = sum(_cross_degree(g, v, b) for g in c for v in y_side)
    return total >= t * nb * m


def extract_rainbow_stars(c: GraphCollection, y_side: Sequence[int], b_side: Sequence[int], t: int) -> list[RainbowStar]:
    """``t`` vertex- and color-disjoint rainbow 5-vertex stars, centers in Y, leaves in B.

    Follows the induction: pick a center with at least ``4t`` B-neighbors in
    at least ``4t`` colors, build ``t - 1`` stars on the remaining centers,
    then give the center four unused colors and four unused leaves greedily.
    """
    if t == 0:
        return []
    if not star_hypotheses_hold(c, y_side, b_side, t):
        raise DomainError("rainbow star hypotheses fail; no guarantee")
    b = _mask(b_side)

    def build(centers: list[int], k: int) -> list[RainbowStar]:
        if k == 0:
            return []
        need = 4 * k
        for w in centers:
            rich = [i for i, g in enumerate(c) if _cross_degree(g, w, b) >= need]
            if len(rich) >= need:
                break
        else:
            raise AssertionError(f"no center with {need} colors of degree {need}")
        stars = build([v for v in centers if v != w], k - 1)
        used_colors = {col for s in stars for col in s.colors}
        used = 0
        for s in stars:
            used |= _mask(s.leaves)
        colors = [i for i in rich if i not in used_colors][:4]
        leaves = []
        for col in colors:
            pick = c.graphs[col].adjacency[w] & b & ~used
            leaf = (pick & -pick).bit_length() - 1
            leaves.append(leaf)
            used |= 1 << leaf
        return stars + [RainbowStar(w, tuple(leaves), tuple(colors))]  # type: ignore[arg-type]

    return build(sorted(y_side), t)


def validate_stars(c: GraphCollection, y_side: Sequence[int], b_side: Sequence[int], stars: Sequence[RainbowStar]) -> bool:
    ys, bs = set(y_side), set(b_side)
    seen_v: set[int] = set()
    seen_c: set[int] = set()
    for s in stars:
        vs = (s.center,) + s.leaves
        if s.center not in ys or not set(s.leaves) <= bs or len(set(vs)) != 5 or len(set(s.colors)) != 4:
            return False
        if seen_v & set(vs) or seen_c & set(s.colors):
            return False
        if not all(0 <= col < c.m and c.graphs[col].has_edge(s.center, leaf) for leaf, col in zip(s.leaves, s.colors)):
            return False
        seen_v |= set(vs)
        seen_c |= set(s.colors)
    return True
