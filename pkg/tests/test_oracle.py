"""Tests für das Brute-Force-Orakel"""

import math

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from core.exceptions import OracleSizeError, ParameterError
from core.graph import Coloring, Graph, NodeSet, generate
from oracle.cycles import (
    CycleQuery, canonical_cycle, find_all_cycles, find_cycle, girth, is_consecutively_colored,
    validate_cycle, well_colored_cycle,
)


def test_girth_of_classic_graphs(petersen, heawood):
    assert girth(petersen) == 5
    assert girth(heawood) == 6
    assert girth(generate("cycle", 7)) == 7
    assert girth(generate("complete", 4)) == 3


def test_girth_of_forest_is_infinite():
    assert math.isinf(girth(generate("tree", 30, seed=1)))
    assert math.isinf(girth(Graph.empty(5)))


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=3, max_value=16), st.integers(min_value=0, max_value=1000))
def test_girth_matches_shortest_basis_cycle(n, seed):
    g = generate("erdos_renyi", n, seed=seed, p=0.35)
    basis = nx.minimum_cycle_basis(g.to_networkx())
    expected = min((len(cycle) for cycle in basis), default=math.inf)
    assert girth(g) == expected


def test_find_cycle_respects_length(petersen):
    assert find_cycle(petersen, 4) is None
    cycle = find_cycle(petersen, 5)
    assert validate_cycle(petersen, cycle, length=5)


def test_find_cycle_at_most(heawood):
    assert find_cycle(heawood, CycleQuery(5, at_most=True)) is None
    assert len(find_cycle(heawood, CycleQuery(6, at_most=True))) == 6


def test_find_cycle_must_intersect():
    # zwei disjunkte Dreiecke
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    cycle = find_cycle(g, CycleQuery(3, must_intersect=NodeSet.from_ids(6, [4])))
    assert set(cycle) == {3, 4, 5}


def test_find_all_cycles_in_k4():
    cycles = find_all_cycles(generate("complete", 4), 4)
    assert len(cycles) == 3
    assert all(c == canonical_cycle(c) for c in cycles)


def test_well_colored_cycle(c4):
    assert well_colored_cycle(c4, Coloring.forced([0, 1, 2, 3], 4), 4) == (0, 1, 2, 3)
    assert well_colored_cycle(c4, Coloring.forced([0, 2, 1, 3], 4), 4) is None
    assert well_colored_cycle(c4, Coloring.forced([0, 3, 2, 1], 4), 4) is not None


def test_consecutive_coloring_in_both_directions():
    c = Coloring.forced([2, 1, 0, 3], 4)
    assert is_consecutively_colored([0, 1, 2, 3], c)
    assert not is_consecutively_colored([0, 2, 1, 3], c)


@pytest.mark.parametrize("vertices, length, valid", [
    ([0, 1, 2, 3], 4, True),
    ([0, 1, 2, 3], 5, False),
    ([0, 1, 2], None, False),
    ([0, 1, 1, 3], None, False),
    ([0, 1], None, False),
    ([0, 1, 2, 9], None, False),
])
def test_validate_cycle(c4, vertices, length, valid):
    assert validate_cycle(c4, vertices, length=length) is valid


def test_validate_cycle_must_intersect(c4):
    assert not validate_cycle(c4, [0, 1, 2, 3], must_intersect=NodeSet.none(4))


def test_canonical_cycle_rotates_and_orients():
    assert canonical_cycle([3, 1, 0, 2]) == (0, 1, 3, 2)
    assert canonical_cycle([2, 0, 1]) == (0, 1, 2)


def test_size_gate():
    with pytest.raises(OracleSizeError):
        find_cycle(generate("path", 65), 4)
    with pytest.raises(OracleSizeError):
        girth(generate("path", 201))


def test_invalid_queries_raise(c4):
    with pytest.raises(ParameterError):
        CycleQuery(2)
    with pytest.raises(ParameterError):
        CycleQuery(4, coloring=Coloring.forced([0, 1, 2, 3], 4), at_most=True)
    with pytest.raises(ParameterError):
        find_cycle(c4, CycleQuery(4, coloring=Coloring.forced([0, 1, 2], 4)))
