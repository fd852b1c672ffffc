"""Tests für Graph, NodeSet, Generatoren und Kantenlisten"""

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from core.exceptions import GraphError, GraphFileError
from core.file_manager import FileManager
from core.graph import (
    Coloring, Graph, NodeSet, generate, induced_subgraph, integer_root_ceil, is_light, plant_cycle,
)


def test_from_edges_merges_duplicates_and_sorts():
    g = Graph.from_edges(4, [(2, 0), (0, 2), (3, 1), (0, 1)])
    assert g.adjacency == ((1, 2), (0, 3), (0,), (1,))
    assert g.num_edges == 3
    assert list(g.edges()) == [(0, 1), (0, 2), (1, 3)]


def test_from_edges_rejects_self_loop_and_out_of_range():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 3)])


def test_asymmetric_adjacency_is_rejected():
    with pytest.raises(GraphError):
        Graph(2, ((1,), ()))


@pytest.mark.parametrize("kind, n, m", [
    ("cycle", 6, 6), ("path", 5, 4), ("star", 6, 5), ("complete", 5, 10),
    ("empty", 4, 0), ("petersen", 10, 15), ("heawood", 14, 21), ("tree", 12, 11),
])
def test_generators_produce_expected_sizes(kind, n, m):
    g = generate(kind, n, seed=3)
    assert (g.n, g.num_edges) == (n, m)


def test_bipartite_generator_respects_sides():
    g = generate("bipartite", 0, a=3, b=4)
    assert g.n == 7 and g.num_edges == 12


def test_tree_generator_is_a_tree():
    g = generate("tree", 20, seed=11)
    assert nx.is_tree(g.to_networkx())


def test_generators_are_deterministic():
    assert generate("erdos_renyi", 20, seed=5, p=0.3) == generate("erdos_renyi", 20, seed=5, p=0.3)


def test_unknown_generator_raises():
    with pytest.raises(GraphError):
        generate("hypercube", 8)


def test_nodeset_operations():
    a = NodeSet.from_ids(6, [0, 2, 4])
    b = NodeSet.from_ids(6, [2, 3])
    assert a.union(b).ids() == (0, 2, 3, 4)
    assert a.intersection(b).ids() == (2,)
    assert a.difference(b).ids() == (0, 4)
    assert a.complement().ids() == (1, 3, 5)
    assert len(NodeSet.full(5)) == 5 and len(NodeSet.none(5)) == 0
    assert 7 not in a
    with pytest.raises(GraphError):
        NodeSet.from_ids(3, [3])


def test_coloring_rejects_colors_outside_palette():
    with pytest.raises(GraphError):
        Coloring.forced([0, 1, 4], 4)
    c = Coloring.forced([0, 3, 1], 4)
    assert c[1] == 3 and len(c) == 3


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=14), st.integers(min_value=0, max_value=10_000), st.data())
def test_induced_subgraph_keeps_only_edges_inside(n, seed, data):
    g = generate("erdos_renyi", n, seed=seed, p=0.4)
    keep_ids = data.draw(st.sets(st.integers(min_value=0, max_value=n - 1)))
    keep = NodeSet.from_ids(n, keep_ids)
    h = induced_subgraph(g, keep)
    expected = {(u, v) for u, v in g.edges() if u in keep_ids and v in keep_ids}
    assert set(h.edges()) == expected
    assert h.n == g.n


@pytest.mark.parametrize("n, k, root", [(16, 2, 4), (17, 2, 5), (27, 3, 3), (28, 3, 4), (1, 3, 1)])
def test_integer_root_ceil(n, k, root):
    assert integer_root_ceil(n, k) == root


def test_is_light_uses_integer_comparison():
    assert is_light(4, 16, 2)
    assert not is_light(5, 16, 2)


def test_plant_cycle_in_tree_adds_cycle():
    tree = generate("tree", 16, seed=2)
    planted = plant_cycle(tree, 6, seed=2)
    cycle = planted.cycle
    assert len(set(cycle)) == 6
    for i, u in enumerate(cycle):
        assert planted.graph.has_edge(u, cycle[(i + 1) % 6])


def test_plant_cycle_heavy_hub_reaches_degree():
    planted = plant_cycle(generate("tree", 16, seed=4), 6, heavy_hub=True, seed=4, k=3)
    assert planted.hub == planted.cycle[0]
    assert planted.graph.degree(planted.hub) >= integer_root_ceil(16, 3) + 1


def test_plant_cycle_too_long_raises():
    with pytest.raises(GraphError):
        plant_cycle(generate("path", 4), 5)


def test_parse_edge_list_with_header_and_comments():
    text = "# nodes 6\n# Kommentar\n0 1\n\n1 2\n"
    g = FileManager().parse_edge_list(text)
    assert g.n == 6
    assert g.degree(5) == 0
    assert g.num_edges == 2


def test_parse_edge_list_without_header_uses_max_id():
    g = FileManager().parse_edge_list("0 3\n3 2\n")
    assert g.n == 4


@pytest.mark.parametrize("text", ["0 1 2\n", "a b\n", "0 0\n", "-1 2\n", "# nodes 2\n0 5\n"])
def test_parse_edge_list_rejects_malformed_input(text):
    with pytest.raises(GraphFileError):
        FileManager().parse_edge_list(text)


def test_read_missing_file_raises(tmp_path):
    with pytest.raises(GraphFileError):
        FileManager().read_graph(str(tmp_path / "fehlt.txt"))


def test_written_edge_list_reads_back(edge_list_file):
    g = Graph.from_edges(7, [(0, 1), (1, 2), (4, 5)])
    path = edge_list_file(g)
    with open(path, encoding="utf-8") as handle:
        assert handle.readline().strip() == "# nodes 7"
    assert FileManager().read_graph(path) == g


def test_format_csv_header_and_rows():
    text = FileManager().format_csv([{"n": 4, "rounds": 7}, {"n": 8, "rounds": 9}])
    assert text.splitlines() == ["n,rounds", "4,7", "8,9"]


def test_degrees_array_matches_adjacency():
    g = generate("star", 5)
    assert np.array_equal(g.degrees, np.array([4, 1, 1, 1, 1]))
