"""Graph-Repräsentation, Generatoren und Teilgraph-Hilfsfunktionen"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from core.exceptions import GraphError
from utils.config import GENERATOR_KINDS, STREAM_SELECTION
from utils.logger import log_with_prefix, get_normalized_logger

logger = get_normalized_logger('graph')


@dataclass(frozen=True)
class Graph:
    """Unveränderlicher einfacher ungerichteter Graph auf den Knoten [0, n)"""

    n: int
    adjacency: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"Knotenzahl negativ: {self.n}")
        if len(self.adjacency) != self.n:
            raise GraphError(f"Adjazenz hat {len(self.adjacency)} Einträge, erwartet {self.n}")
        for v, nbrs in enumerate(self.adjacency):
            previous = -1
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise GraphError(f"Nachbar {u} von {v} außerhalb von [0, {self.n})")
                if u == v:
                    raise GraphError(f"Schleife an Knoten {v}")
                if u <= previous:
                    raise GraphError(f"Nachbarliste von {v} nicht streng aufsteigend")
                previous = u
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if not _sorted_contains(self.adjacency[u], v):
                    raise GraphError(f"Kante {{{v},{u}}} nicht symmetrisch")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        """Baut die kanonische Form aus einer Kantenliste (Duplikate werden zusammengefasst)"""
        buckets: List[set] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise GraphError(f"Schleife an Knoten {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"Kante ({u},{v}) außerhalb von [0, {n})")
            buckets[u].add(v)
            buckets[v].add(u)
        return cls(n, tuple(tuple(sorted(b)) for b in buckets))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, tuple(() for _ in range(n)))

    @classmethod
    def from_networkx(cls, nxg: nx.Graph) -> "Graph":
        """Übernimmt einen networkx-Graphen; Knoten werden sortiert auf [0, n) abgebildet"""
        nodes = sorted(nxg.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        edges = [(index[u], index[v]) for u, v in nxg.edges() if u != v]
        return cls.from_edges(len(nodes), edges)

    def to_networkx(self) -> nx.Graph:
        nxg = nx.Graph()
        nxg.add_nodes_from(range(self.n))
        nxg.add_edges_from(self.edges())
        return nxg

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        if not (0 <= u < self.n and 0 <= v < self.n):
            return False
        return _sorted_contains(self.adjacency[u], v)

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Kanten (u, v) mit u < v in aufsteigender Reihenfolge"""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield (u, v)

    @cached_property
    def num_edges(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.fromiter((len(nbrs) for nbrs in self.adjacency), dtype=np.int64, count=self.n)


def _sorted_contains(seq: Sequence[int], value: int) -> bool:
    i = bisect.bisect_left(seq, value)
    return i < len(seq) and seq[i] == value


@dataclass(frozen=True, eq=False)
class NodeSet:
    """Mitgliedschafts-Bitmap über [0, n)"""

    mask: np.ndarray

    def __post_init__(self):
        mask = np.asarray(self.mask, dtype=bool).copy()
        mask.setflags(write=False)
        object.__setattr__(self, 'mask', mask)

    @classmethod
    def from_ids(cls, n: int, ids: Iterable[int]) -> "NodeSet":
        mask = np.zeros(n, dtype=bool)
        for v in ids:
            if not 0 <= v < n:
                raise GraphError(f"Knoten {v} außerhalb von [0, {n})")
            mask[v] = True
        return cls(mask)

    @classmethod
    def full(cls, n: int) -> "NodeSet":
        return cls(np.ones(n, dtype=bool))

    @classmethod
    def none(cls, n: int) -> "NodeSet":
        return cls(np.zeros(n, dtype=bool))

    @property
    def n(self) -> int:
        return int(self.mask.shape[0])

    def ids(self) -> Tuple[int, ...]:
        return tuple(int(v) for v in np.flatnonzero(self.mask))

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and bool(self.mask[v])

    def __iter__(self) -> Iterator[int]:
        return iter(self.ids())

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __eq__(self, other) -> bool:
        return isinstance(other, NodeSet) and np.array_equal(self.mask, other.mask)

    def __hash__(self) -> int:
        return hash(self.mask.tobytes())

    def __repr__(self) -> str:
        return f"NodeSet(n={self.n}, ids={list(self.ids())})"

    def union(self, other: "NodeSet") -> "NodeSet":
        return NodeSet(self.mask | other.mask)

    def intersection(self, other: "NodeSet") -> "NodeSet":
        return NodeSet(self.mask & other.mask)

    def difference(self, other: "NodeSet") -> "NodeSet":
        return NodeSet(self.mask & ~other.mask)

    def complement(self) -> "NodeSet":
        return NodeSet(~self.mask)


@dataclass(frozen=True, eq=False)
class Coloring:
    """Eine Farbe pro Knoten aus {0, …, palette-1}"""

    colors: np.ndarray
    palette: int

    def __post_init__(self):
        colors = np.asarray(self.colors, dtype=np.int64).copy()
        if colors.ndim != 1:
            raise GraphError("Färbung muss eindimensional sein")
        if self.palette < 1:
            raise GraphError(f"Palette muss ≥ 1 sein: {self.palette}")
        if colors.size and (colors.min() < 0 or colors.max() >= self.palette):
            raise GraphError(f"Farben außerhalb von [0, {self.palette})")
        colors.setflags(write=False)
        object.__setattr__(self, 'colors', colors)

    @classmethod
    def forced(cls, colors: Sequence[int], palette: int) -> "Coloring":
        return cls(np.asarray(colors, dtype=np.int64), palette)

    def __getitem__(self, v: int) -> int:
        return int(self.colors[v])

    def __len__(self) -> int:
        return int(self.colors.shape[0])

    def __eq__(self, other) -> bool:
        return (isinstance(other, Coloring) and self.palette == other.palette
                and np.array_equal(self.colors, other.colors))

    def __hash__(self) -> int:
        return hash((self.palette, self.colors.tobytes()))


@dataclass(frozen=True)
class PlantedCycle:
    """Graph mit eingepflanztem Zyklus und dessen Knotenliste"""

    graph: Graph
    cycle: Tuple[int, ...]
    hub: Optional[int] = None


def induced_subgraph(g: Graph, keep: NodeSet) -> Graph:
    """Induzierter Teilgraph; der Indexraum bleibt erhalten, nicht behaltene Knoten werden isoliert."""
    if keep.n != g.n:
        raise GraphError(f"Knotenmenge über {keep.n} Knoten passt nicht zu n={g.n}")
    mask = keep.mask
    adjacency = tuple(
        tuple(u for u in nbrs if mask[u]) if mask[v] else ()
        for v, nbrs in enumerate(g.adjacency)
    )
    return Graph(g.n, adjacency)


def integer_root_ceil(n: int, k: int) -> int:
    """Kleinstes r mit r^k ≥ n (exakt in Ganzzahlen)"""
    if n <= 1:
        return max(n, 0)
    r = max(1, int(round(n ** (1.0 / k))))
    while r ** k < n:
        r += 1
    while r > 1 and (r - 1) ** k >= n:
        r -= 1
    return r


def is_light(degree: int, n: int, k: int) -> bool:
    """deg ≤ n^{1/k} ausgewertet als deg^k ≤ n"""
    return degree ** k <= n


def generate(kind: str, n: int, seed: int = 0, **params) -> Graph:
    """Erzeugt Testinstanzen in kanonischer Form; deterministisch für festen Seed.

    Unterstützte Arten: cycle, path, star, erdos_renyi (p), bipartite (a, b),
    tree, complete, petersen, heawood, empty.
    """
    herkunft = 'graph.py'
    if kind not in GENERATOR_KINDS:
        raise GraphError(f"Unbekannter Generator: {kind}")
    if kind not in ("petersen", "heawood", "bipartite") and n < 1:
        raise GraphError(f"n muss ≥ 1 sein: {n}")

    if kind == "cycle":
        if n < 3:
            raise GraphError(f"Zyklus braucht n ≥ 3: {n}")
        nxg = nx.cycle_graph(n)
    elif kind == "path":
        nxg = nx.path_graph(n)
    elif kind == "star":
        nxg = nx.star_graph(n - 1)
    elif kind == "complete":
        nxg = nx.complete_graph(n)
    elif kind == "empty":
        nxg = nx.empty_graph(n)
    elif kind == "erdos_renyi":
        p = params.get('p', 0.2)
        if not 0.0 <= p <= 1.0:
            raise GraphError(f"Kantenwahrscheinlichkeit außerhalb [0,1]: {p}")
        nxg = nx.gnp_random_graph(n, p, seed=seed)
    elif kind == "bipartite":
        a = params.get('a')
        b = params.get('b')
        if a is None or b is None:
            if n < 2:
                raise GraphError("K_{a,b} braucht a, b ≥ 1")
            a = n // 2 if a is None else a
            b = n - a if b is None else b
        if a < 1 or b < 1:
            raise GraphError(f"K_{{a,b}} braucht a, b ≥ 1: a={a}, b={b}")
        nxg = nx.complete_bipartite_graph(a, b)
    elif kind == "tree":
        if n <= 2:
            nxg = nx.path_graph(n)
        else:
            rng = np.random.default_rng([seed, STREAM_SELECTION])
            sequence = rng.integers(0, n, size=n - 2).tolist()
            nxg = nx.from_prufer_sequence(sequence)
    elif kind == "petersen":
        nxg = nx.petersen_graph()
    else:
        nxg = nx.heawood_graph()

    g = Graph.from_networkx(nxg)
    log_with_prefix(logger, 'debug', 'GRAPH', herkunft, 'Generiert: %s mit n=%d, m=%d', kind, g.n, g.num_edges)
    return g


def plant_cycle(g: Graph, length: int, heavy_hub: bool = False, seed: int = 0, k: int = 2) -> PlantedCycle:
    """Pflanzt einen einfachen Zyklus der Länge ``length`` auf bestehenden Knoten ein.

    Mit ``heavy_hub`` erhält der erste Zyklusknoten Pendelkanten bis Grad ⌈n^{1/k}⌉+1.
    """
    herkunft = 'graph.py'
    if length < 3:
        raise GraphError(f"Zykluslänge muss ≥ 3 sein: {length}")
    if length > g.n:
        raise GraphError(f"Zykluslänge {length} größer als n={g.n}")

    rng = np.random.default_rng([seed, STREAM_SELECTION, length])
    cycle = tuple(int(v) for v in rng.choice(g.n, size=length, replace=False))
    edges = set(g.edges())
    for i in range(length):
        u, v = cycle[i], cycle[(i + 1) % length]
        edges.add((min(u, v), max(u, v)))

    hub = None
    if heavy_hub:
        hub = cycle[0]
        target = integer_root_ceil(g.n, k) + 1
        current = {v for e in edges for v in e if hub in e} - {hub}
        candidates = [v for v in rng.permutation(g.n).tolist() if v != hub and v not in current and v not in cycle]
        while len(current) < target and candidates:
            v = candidates.pop()
            current.add(v)
            edges.add((min(hub, v), max(hub, v)))
        if len(current) < target:
            raise GraphError(f"Zu wenige Knoten für Hub-Grad {target} bei n={g.n}")

    planted = Graph.from_edges(g.n, edges)
    log_with_prefix(logger, 'debug', 'GRAPH', herkunft, 'Zyklus eingepflanzt: %s (Hub=%s)', list(cycle), hub)
    return PlantedCycle(planted, cycle, hub)


def diameter(g: Graph) -> int:
    """Durchmesser; bei unzusammenhängenden Graphen das Maximum über die Komponenten"""
    if g.n == 0:
        return 0
    nxg = g.to_networkx()
    return max(nx.diameter(nxg.subgraph(comp)) for comp in nx.connected_components(nxg))
