"""Gemeinsame Fixtures für die Testsuite"""

import pytest

from core.file_manager import FileManager
from core.graph import Graph, generate
from witness.instances import k45_instance


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="Versuche in Abnahmegröße ausführen")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="nur mit --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def c4():
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def k45():
    return k45_instance()


@pytest.fixture
def edge_list_file(tmp_path):
    """Schreibt einen Graphen als Kantenliste und gibt den Pfad zurück"""

    def write(graph: Graph, name: str = "graph.txt") -> str:
        return FileManager().write_graph(graph, str(tmp_path / name))

    return write


@pytest.fixture
def petersen():
    return generate("petersen", 10)


@pytest.fixture
def heawood():
    return generate("heawood", 14)
