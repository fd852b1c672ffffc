"""Zufällige und feste Ebeneninstanzen für die Ausdünnung"""

from __future__ import annotations

from typing import List, Set, Tuple

import numpy as np

from core.exceptions import ParameterError
from core.graph import Graph, NodeSet
from witness.sparsification import LevelSets

MAX_INSTANCE_NODES = 40


def random_level_instance(n: int, k: int, seed: int = 0, density: float = 0.5) -> Tuple[Graph, LevelSets]:
    """Zufälliger Graph mit S, W₀, V₁ … V_{k−1}, der die Ebeneninvarianten erfüllt.

    Jeder W₀-Knoten bekommt mindestens k² Nachbarn in S, aufeinanderfolgende
    Ebenen werden mit Wahrscheinlichkeit ``density`` verbunden.
    """
    if k < 2:
        raise ParameterError(f"k muss ≥ 2 sein: {k}")
    if not 0.0 < density <= 1.0:
        raise ParameterError(f"density muss in (0,1] liegen: {density}")
    if n > MAX_INSTANCE_NODES or n < k ** 2 + k:
        raise ParameterError(f"n muss in [{k ** 2 + k}, {MAX_INSTANCE_NODES}] liegen: {n}")

    rng = np.random.default_rng([seed, n, k])
    spare = n - k ** 2 - k
    s_count = k ** 2 + int(rng.integers(0, spare // 2 + 1))
    rest = n - s_count
    order = rng.permutation(n)
    S = [int(u) for u in order[:s_count]]
    others = [int(u) for u in order[s_count:]]

    # jede Ebene mindestens einmal, W₀ bekommt den größten Anteil
    weights = np.array([2.0] + [1.0] * (k - 1))
    assignment = list(range(k)) + [int(x) for x in rng.choice(k, size=rest - k, p=weights / weights.sum())]
    levels: List[List[int]] = [[] for _ in range(k)]
    for u, level in zip(others, assignment):
        levels[level].append(u)

    edges: Set[Tuple[int, int]] = set()
    s_array = np.array(S)
    for w in levels[0]:
        extra = int(rng.binomial(s_count - k ** 2, density))
        for s in rng.choice(s_array, size=k ** 2 + extra, replace=False):
            edges.add((min(w, int(s)), max(w, int(s))))
    for j in range(1, k):
        for u in levels[j]:
            for x in levels[j - 1]:
                if rng.random() < density:
                    edges.add((min(u, x), max(u, x)))

    g = Graph.from_edges(n, edges)
    ls = LevelSets(NodeSet.from_ids(n, S), tuple(NodeSet.from_ids(n, level) for level in levels), k)
    ls.validate(g)
    return g, ls


def k45_instance() -> Tuple[Graph, LevelSets, int]:
    """K_{4,5} zwischen S = {0..3} und W₀ = {4..8}, v = 9 an allen W₀-Knoten, k = 2"""
    n = 10
    S = range(0, 4)
    W0 = range(4, 9)
    v = 9
    edges = [(s, w) for s in S for w in W0] + [(w, v) for w in W0]
    g = Graph.from_edges(n, edges)
    ls = LevelSets(NodeSet.from_ids(n, S), (NodeSet.from_ids(n, W0), NodeSet.from_ids(n, [v])), 2)
    return g, ls, v
