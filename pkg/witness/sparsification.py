"""Ausdünnung der Kantenmengen E(S, W₀) entlang der Ebenen V₁ … V_{k−1}.

Für w ∈ W₀ ist OUT(w) die Menge der Kanten von w nach S. Ein Knoten v der
Ebene i vereinigt die OUT-Mengen seiner Nachbarn in Ebene i−1 zu ℍ(v) und
entfernt abwechselnd Kanten an S-Knoten und W₀-Knoten mit kleinem Grad.
Was an S-Knoten entfernt wird, bildet OUT(v).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

import networkx as nx

from core.exceptions import DegeneracyError, WitnessError
from core.graph import Graph, NodeSet
from utils.logger import log_with_prefix, get_normalized_logger

logger = get_normalized_logger('sparsification')

# Kante (s, w) mit s ∈ S und w ∈ W₀
Edge = Tuple[int, int]


@dataclass(frozen=True)
class LevelSets:
    """S, die Ebenen [V₀ = W₀, V₁, …, V_{k−1}] und k"""

    S: NodeSet
    levels: Tuple[NodeSet, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, 'levels', tuple(self.levels))

    @property
    def W0(self) -> NodeSet:
        return self.levels[0]

    def level_of(self, v: int) -> Optional[int]:
        for i, level in enumerate(self.levels):
            if v in level:
                return i
        return None

    def validate(self, g: Graph) -> None:
        """Prüft Disjunktheit und die k²-Nachbarschaft jedes W₀-Knotens in S"""
        if self.k < 2:
            raise WitnessError(f"k muss ≥ 2 sein: {self.k}")
        if len(self.levels) != self.k:
            raise WitnessError(f"{len(self.levels)} Ebenen statt k={self.k}")
        sets = [self.S, *self.levels]
        if any(s.n != g.n for s in sets):
            raise WitnessError("Knotenmengen passen nicht zur Knotenzahl")
        for a in range(len(sets)):
            for b in range(a + 1, len(sets)):
                if len(sets[a].intersection(sets[b])):
                    raise WitnessError(f"Mengen {a} und {b} sind nicht disjunkt")
        needed = self.k ** 2
        for w in self.W0:
            count = sum(1 for s in g.neighbors(w) if s in self.S)
            if count < needed:
                raise WitnessError(f"W₀-Knoten {w} hat nur {count} < {needed} Nachbarn in S")


class EdgeSubset:
    """Teilmenge von E(S, W₀) mit Gradindizes auf beiden Seiten"""

    __slots__ = ('edges', 'deg_s', 'deg_w')

    def __init__(self, edges: Iterable[Edge] = ()):
        self.edges: FrozenSet[Edge] = frozenset(edges)
        self.deg_s: Counter = Counter(s for s, _ in self.edges)
        self.deg_w: Counter = Counter(w for _, w in self.edges)

    def __contains__(self, edge: Edge) -> bool:
        return edge in self.edges

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(sorted(self.edges))

    def __eq__(self, other) -> bool:
        return isinstance(other, EdgeSubset) and self.edges == other.edges

    def __hash__(self) -> int:
        return hash(self.edges)

    def __repr__(self) -> str:
        return f"EdgeSubset({sorted(self.edges)})"

    def star_s(self, s: int) -> List[int]:
        return sorted(w for t, w in self.edges if t == s)

    def star_w(self, w: int) -> List[int]:
        return sorted(s for s, u in self.edges if u == w)

    def filter_s(self, threshold: int) -> "EdgeSubset":
        """Behält Kanten, deren S-Endpunkt Grad > threshold hat"""
        return EdgeSubset(e for e in self.edges if self.deg_s[e[0]] > threshold)

    def filter_w(self, threshold: int) -> "EdgeSubset":
        """Behält Kanten, deren W₀-Endpunkt Grad > threshold hat"""
        return EdgeSubset(e for e in self.edges if self.deg_w[e[1]] > threshold)

    def union(self, other: "EdgeSubset") -> "EdgeSubset":
        return EdgeSubset(self.edges | other.edges)

    def difference(self, other: "EdgeSubset") -> "EdgeSubset":
        return EdgeSubset(self.edges - other.edges)

    def issubset(self, other: "EdgeSubset") -> bool:
        return self.edges <= other.edges


@dataclass
class NodeSparsification:
    """ℍ(v), die Kette ℍ(v,0) ⊆ … ⊆ ℍ(v,2q) (Index γ) und OUT(v)"""

    v: int
    level: int
    q: int
    hv: EdgeSubset
    chain: List[EdgeSubset]
    out: EdgeSubset
    provenance: Dict[Edge, int] = field(default_factory=dict)

    def H(self, gamma: Optional[int] = None) -> EdgeSubset:
        return self.hv if gamma is None else self.chain[gamma]


@dataclass
class SparsifiedFamily:
    ls: LevelSets
    per_node: Dict[int, NodeSparsification]
    out_w0: Dict[int, EdgeSubset]

    def out(self, v: int) -> EdgeSubset:
        if v in self.out_w0:
            return self.out_w0[v]
        return self.per_node[v].out

    def nonempty_core(self) -> List[int]:
        """Knoten mit ℍ(v,0) ≠ ∅, nach Ebene und Kennung sortiert"""
        return [v for v, ns in sorted(self.per_node.items(), key=lambda item: (item[1].level, item[0]))
                if len(ns.chain[0])]


def s_threshold(k: int, i: int) -> int:
    """2^{i−1}(k−1), Gradschranke an S-Knoten auf Ebene i"""
    return 2 ** (i - 1) * (k - 1)


def chain_depth(k: int, i: int) -> int:
    return (k - i) // 2


def out_degree_floor(k: int, i: int) -> int:
    """Untere Schranke für deg_{OUT(v)}(w), w ∈ W₀(v), solange alle ℍ(·,0) bis Ebene i leer sind"""
    return k ** 2 - sum(2 * chain_depth(k, j) for j in range(1, i + 1))


def _sparsify_node(v: int, level: int, k: int, hv: EdgeSubset, provenance: Dict[Edge, int]) -> NodeSparsification:
    q = chain_depth(k, level)
    chain: List[Optional[EdgeSubset]] = [None] * (2 * q + 1)
    top = hv.filter_s(s_threshold(k, level))
    removed = [hv.difference(top)]
    chain[2 * q] = top
    for gamma in range(q, 0, -1):
        odd = chain[2 * gamma].filter_w(2 * gamma)
        even = odd.filter_s(2 * gamma - 1)
        chain[2 * gamma - 1] = odd
        chain[2 * gamma - 2] = even
        removed.append(odd.difference(even))
    out = EdgeSubset()
    for part in removed:
        out = out.union(part)
    return NodeSparsification(v, level, q, hv, chain, out, provenance)


def build_sparsification(g: Graph, ls: LevelSets) -> SparsifiedFamily:
    """Berechnet ℍ(v), die Kette und OUT(v) für alle Knoten der Ebenen 1 … k−1"""
    herkunft = 'sparsification.py'
    ls.validate(g)
    k = ls.k
    out_w0 = {w: EdgeSubset((s, w) for s in g.neighbors(w) if s in ls.S) for w in ls.W0}
    outs: Dict[int, EdgeSubset] = dict(out_w0)
    per_node: Dict[int, NodeSparsification] = {}

    for i in range(1, k):
        previous = ls.levels[i - 1]
        for v in ls.levels[i]:
            edges: set = set()
            provenance: Dict[Edge, int] = {}
            for u in g.neighbors(v):
                if u not in previous:
                    continue
                for e in outs[u].edges:
                    # Nachbarn aufsteigend: die kleinste Kennung gewinnt
                    provenance.setdefault(e, u)
                    edges.add(e)
            ns = _sparsify_node(v, i, k, EdgeSubset(edges), provenance)
            per_node[v] = ns
        for v in ls.levels[i]:
            outs[v] = per_node[v].out

    family = SparsifiedFamily(ls, per_node, out_w0)
    log_with_prefix(logger, 'debug', 'SPARSIFY', herkunft, '📊 k=%d, |S|=%d, |W₀|=%d, ℍ(v,0)≠∅ bei %d Knoten',
                    k, len(ls.S), len(ls.W0), len(family.nonempty_core()))
    return family


def provenance_path(fam: SparsifiedFamily, v: int, edge: Edge) -> List[int]:
    """Pfad (w, v₁, …, v_{i−1}, v) mit edge ∈ OUT(v_j) für alle j"""
    if v not in fam.per_node or edge not in fam.per_node[v].hv:
        raise WitnessError(f"Kante {edge} liegt nicht in ℍ({v})")
    path = [v]
    current = v
    while current in fam.per_node:
        current = fam.per_node[current].provenance[edge]
        path.append(current)
    if current != edge[1]:
        raise WitnessError(f"Herkunftspfad von {edge} endet bei {current}")
    return list(reversed(path))


def reachable_W0(g: Graph, ls: LevelSets, i: int) -> Dict[int, FrozenSet[int]]:
    """W₀(u) für alle u ∈ V_0 … V_i über ebenentreue Pfade"""
    reach: Dict[int, FrozenSet[int]] = {w: frozenset([w]) for w in ls.W0}
    for j in range(1, i + 1):
        previous = ls.levels[j - 1]
        for u in ls.levels[j]:
            sources: set = set()
            for x in g.neighbors(u):
                if x in previous:
                    sources |= reach[x]
            reach[u] = frozenset(sources)
    return reach


def bound_W0v(g: Graph, ls: LevelSets, v: int) -> Tuple[int, int, bool]:
    """(|W₀(v)|, 2^{i−1}(k−1)|S|, Schranke eingehalten)"""
    i = ls.level_of(v)
    if i is None or i == 0:
        raise WitnessError(f"Knoten {v} liegt in keiner Ebene V_i mit i ≥ 1")
    size = len(reachable_W0(g, ls, i)[v])
    bound = s_threshold(ls.k, i) * len(ls.S)
    return size, bound, size <= bound


def degeneracy_path_grow(bipartite: EdgeSubset, k: int) -> List[int]:
    """Schält Knoten mit Grad < k ab und baut im Kern gierig einen Pfad mit 2k Knoten"""
    herkunft = 'sparsification.py'
    h = nx.Graph()
    h.add_edges_from(bipartite.edges)
    core = nx.k_core(h, k) if h.number_of_nodes() else h
    if core.number_of_nodes() == 0:
        log_with_prefix(logger, 'warning', 'SPARSIFY', herkunft, '⚠️ Leerer %d-Kern bei %d Kanten', k, len(bipartite))
        raise DegeneracyError(f"Leerer {k}-Kern: {len(bipartite)} Kanten reichen nicht")

    path = [min(core.nodes)]
    visited = {path[0]}
    while len(path) < 2 * k:
        candidates = sorted(u for u in core.neighbors(path[-1]) if u not in visited)
        if not candidates:
            raise DegeneracyError(f"Gieriger Pfad bleibt nach {len(path)} Knoten stecken")
        path.append(candidates[0])
        visited.add(candidates[0])
    return path
