from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import collections
from transversal.assign import (
    ColorAssignment,
    HostSubgraph,
    Mode,
    assignment_oracle,
    find_assignment,
    validate_assignment,
)
from transversal.core import DomainError, Graph, GraphCollection

K3 = Graph.complete(3)
C3 = HostSubgraph.of(3, [(0, 1), (1, 2), (2, 0)])
C4 = HostSubgraph.of(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def _hall_violation() -> GraphCollection:
    low = Graph.from_edges(4, [(0, 1), (1, 2)])
    high = Graph.from_edges(4, [(2, 3), (3, 0)])
    return GraphCollection.of(4, [low, low, low, high])


EXAMPLES = [
    (C3, GraphCollection.copies(K3, 3), True),
    (C3, GraphCollection.of(3, [K3, K3, Graph.empty(3)]), False),
    (C4, _hall_violation(), False),
]


@pytest.mark.parametrize("solver", [find_assignment, assignment_oracle])
@pytest.mark.parametrize("host, coll, exists", EXAMPLES)
def test_examples(solver, host, coll, exists):
    found = solver(host, coll, Mode.TRANSVERSAL)
    assert (found is not None) == exists
    if found:
        assert validate_assignment(host, coll, found)


def test_hall_violation_by_bijection_count():
    c = _hall_violation()
    valid = [p for p in itertools.permutations(range(4))
             if all(c[k].has_edge(u, v) for (u, v), k in zip(C4.edges, p))]
    assert valid == []


def test_empty_host_with_no_colors():
    found = find_assignment(HostSubgraph.of(3, []), GraphCollection(3, ()), "transversal")
    assert found == ColorAssignment((), Mode.TRANSVERSAL)


def test_single_edge():
    c = GraphCollection.copies(Graph.from_edges(2, [(0, 1)]), 1)
    found = find_assignment(HostSubgraph.of(2, [(0, 1)]), c, Mode.TRANSVERSAL)
    assert found.mapping == (0,)


def test_canonical_choice_prefers_low_colors_in_input_order():
    c = GraphCollection.copies(K3, 3)
    assert find_assignment(C3, c, Mode.TRANSVERSAL).mapping == (0, 1, 2)


def test_size_preconditions():
    c = GraphCollection.copies(K3, 2)
    with pytest.raises(DomainError):
        find_assignment(C3, c, Mode.TRANSVERSAL)
    with pytest.raises(DomainError):
        find_assignment(C3, c, Mode.RAINBOW)
    with pytest.raises(DomainError):
        find_assignment(HostSubgraph.of(4, [(0, 1)]), c, Mode.RAINBOW)


def test_host_validation():
    with pytest.raises(DomainError):
        HostSubgraph.of(3, [(0, 1), (1, 0)])
    with pytest.raises(DomainError):
        HostSubgraph.of(3, [(0, 3)])


def test_validate_rejects_tampering():
    c = GraphCollection.copies(K3, 3)
    assert not validate_assignment(C3, c, ColorAssignment((0, 0, 1), Mode.RAINBOW))
    sparse = GraphCollection.of(3, [Graph.from_edges(3, [(0, 1)]), K3, K3])
    assert not validate_assignment(C3, sparse, ColorAssignment((1, 0, 2), Mode.TRANSVERSAL))
    assert not validate_assignment(C3, c, ColorAssignment((0, 1), Mode.TRANSVERSAL))


@st.composite
def instances(draw):
    c = draw(collections(n_min=2, n_max=5))
    pairs = list(itertools.combinations(range(c.n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=min(len(pairs), 8)))
    host = HostSubgraph.of(c.n, edges)
    mode = Mode.TRANSVERSAL if len(edges) == c.m else Mode.RAINBOW
    return host, c, mode


@given(instances())
def test_matching_agrees_with_oracle(inst):
    host, c, mode = inst
    if len(host.edges) > c.m:
        with pytest.raises(DomainError):
            find_assignment(host, c, mode)
        return
    fast = find_assignment(host, c, mode)
    slow = assignment_oracle(host, c, mode)
    assert (fast is None) == (slow is None)
    for found in (fast, slow):
        if found is not None:
            assert validate_assignment(host, c, found)


@given(instances())
def test_rainbow_is_monotone_under_adding_a_complete_color(inst):
    host, c, _ = inst
    if len(host.edges) > c.m:
        return
    if find_assignment(host, c, Mode.RAINBOW) is not None:
        assert find_assignment(host, c.with_complete_color(), Mode.RAINBOW) is not None
