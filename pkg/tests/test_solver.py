from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import collections, permutations, random_collection
from transversal.core import DomainError, Graph, GraphCollection
from transversal.families import generate_family, generate_h_s_t, generate_half_split
from transversal.solver import (
    count_transversal_hamilton_cycles,
    find_longest_rainbow_cycle,
    find_rainbow_cycle_of_length,
    find_transversal_hamilton_cycle,
    find_transversal_hamilton_path,
    naive_transversal_hamilton_cycle,
    naive_transversal_hamilton_path,
)

BOWTIE = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)])
C4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def test_complete_graphs_have_a_cycle():
    found = find_transversal_hamilton_cycle(GraphCollection.copies(Graph.complete(4), 4))
    assert found is not None and sorted(found.edge_colors) == [0, 1, 2, 3]


def test_half_split_has_no_cycle():
    assert find_transversal_hamilton_cycle(generate_half_split(5)) is None


def test_one_bipartite_color_blocks_the_cycle():
    assert find_transversal_hamilton_cycle(generate_h_s_t(6, 5, 1)) is None


def test_single_edge_path():
    found = find_transversal_hamilton_path(GraphCollection.copies(Graph.complete(2), 1))
    assert found.vertex_sequence == (0, 1) and found.edge_colors == (0,)


def test_three_four_cycles_have_a_path():
    c = GraphCollection.copies(C4, 3)
    found = find_transversal_hamilton_path(c)
    assert found is not None and found.is_valid(c)
    assert naive_transversal_hamilton_path(c) is not None


def test_two_cliques_block_the_path():
    assert find_transversal_hamilton_path(generate_family("hpath-hn10", 6)) is None


def test_bowtie_longest_rainbow_cycle_is_a_triangle():
    # Only two cycles exist in the bowtie, both triangles through the center.
    c = GraphCollection.copies(BOWTIE, 5)
    found = find_longest_rainbow_cycle(c, 3)
    assert len(found.vertex_sequence) == 3
    assert find_rainbow_cycle_of_length(c, 4) is None
    assert not any(
        all(BOWTIE.has_edge(p[i], p[(i + 1) % 4]) for i in range(4))
        for p in itertools.permutations(range(5), 4)
    )


def test_empty_union_has_no_cycle():
    c = GraphCollection.copies(Graph.empty(5), 5)
    assert find_longest_rainbow_cycle(c, 3) is None


def test_complete_graphs_longest_cycle_spans():
    found = find_longest_rainbow_cycle(GraphCollection.copies(Graph.complete(4), 4), 3)
    assert len(found.vertex_sequence) == 4


def test_longest_cycle_is_limited_by_colors():
    found = find_longest_rainbow_cycle(GraphCollection.copies(Graph.complete(6), 4), 3)
    assert len(found.vertex_sequence) == 4


def test_min_len_bounds():
    with pytest.raises(DomainError):
        find_longest_rainbow_cycle(GraphCollection.copies(Graph.complete(4), 4), 2)


def test_domain_errors():
    with pytest.raises(DomainError):
        find_transversal_hamilton_cycle(GraphCollection.copies(Graph.complete(4), 3))
    with pytest.raises(DomainError):
        find_transversal_hamilton_path(GraphCollection.copies(Graph.complete(4), 4))
    with pytest.raises(DomainError):
        find_transversal_hamilton_cycle(GraphCollection.copies(Graph.complete(5), 5), max_n=4)


def _count_oracle(c: GraphCollection) -> int:
    """Distinct Hamilton cycles times valid color bijections, by enumeration."""
    n = c.n
    cycles = set()
    for rest in itertools.permutations(range(1, n)):
        seq = (0,) + rest
        edges = frozenset(frozenset((seq[i], seq[(i + 1) % n])) for i in range(n))
        if all(c.union_graph().has_edge(*e) for e in edges):
            cycles.add(edges)
    total = 0
    for edges in cycles:
        pairs = [tuple(e) for e in edges]
        total += sum(all(c[k].has_edge(*e) for e, k in zip(pairs, p)) for p in itertools.permutations(range(n)))
    return total


def test_count_on_triangles():
    assert count_transversal_hamilton_cycles(GraphCollection.copies(Graph.complete(3), 3)) == 6


def test_count_on_half_split():
    assert count_transversal_hamilton_cycles(generate_half_split(5)) == 0


def test_count_on_four_cycles():
    c = GraphCollection.copies(C4, 4)
    assert _count_oracle(c) == 24
    assert count_transversal_hamilton_cycles(c) == 24


@given(collections(n_min=3, n_max=5, m_offset=0))
def test_count_matches_enumeration(c):
    count = count_transversal_hamilton_cycles(c)
    assert count == _count_oracle(c)
    assert (count > 0) == (find_transversal_hamilton_cycle(c) is not None)


@given(collections(n_min=3, n_max=5, m_offset=0))
def test_cycle_agrees_with_naive(c):
    fast = find_transversal_hamilton_cycle(c)
    assert (fast is None) == (naive_transversal_hamilton_cycle(c) is None)
    if fast:
        assert fast.is_valid(c) and sorted(fast.edge_colors) == list(range(c.m))
        assert len(set(fast.vertex_sequence)) == c.n


@given(collections(n_min=2, n_max=5, m_offset=-1))
def test_path_agrees_with_naive(c):
    fast = find_transversal_hamilton_path(c)
    assert (fast is None) == (naive_transversal_hamilton_path(c) is None)
    if fast:
        assert fast.is_valid(c) and sorted(fast.edge_colors) == list(range(c.m))


@given(collections(n_min=3, n_max=6, m_offset=0), st.data())
def test_presence_is_invariant_under_relabeling(c, data):
    perm = data.draw(permutations(c.n))
    order = data.draw(permutations(c.m))
    other = c.relabel(perm).permute_colors(order)
    assert (find_transversal_hamilton_cycle(c) is None) == (find_transversal_hamilton_cycle(other) is None)


@given(collections(n_min=3, n_max=6, m=5), st.integers(3, 6))
def test_rainbow_cycle_of_length_is_valid(c, length):
    found = find_rainbow_cycle_of_length(c, length)
    if found is not None:
        assert len(found.vertex_sequence) == length
        assert found.is_valid(c)


def test_result_serializes():
    found = find_transversal_hamilton_cycle(GraphCollection.copies(Graph.complete(3), 3))
    assert found.to_dict() == {"kind": "cycle", "vertices": [0, 1, 2], "colors": [0, 1, 2]}
    assert found.edges() == [(0, 1), (1, 2), (2, 0)]


def test_solver_handles_larger_dense_instances():
    rng = random.Random(5)
    c = random_collection(12, 12, 0.6, rng)
    found = find_transversal_hamilton_cycle(c)
    assert found is not None and found.is_valid(c)
