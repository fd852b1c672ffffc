"""Referenzberechnung der Mengen X₀(v) gut gefärbter Pfade"""

from __future__ import annotations

from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from core.exceptions import ParameterError
from core.graph import Coloring, Graph, NodeSet


def chain_colors(k: int, length: Optional[int] = None) -> Tuple[int, int, List[int], List[int]]:
    """(L, Treffpunktfarbe, aufsteigende Weiterleiterfarben, absteigende Weiterleiterfarben)"""
    cycle_length = 2 * k if length is None else length
    if k < 1 or cycle_length < 3 or not k < cycle_length:
        raise ParameterError(f"Ungültige Kettenparameter k={k}, L={cycle_length}")
    ascending = list(range(1, k))
    descending = list(range(cycle_length - 1, k, -1))
    return cycle_length, k, ascending, descending


def _is_source(v: int, c: Coloring, x: NodeSet) -> bool:
    return v in x and c[v] == 0


def compute_X0(h: Graph, c: Coloring, x: NodeSet, k: int,
               length: Optional[int] = None) -> Dict[int, FrozenSet[int]]:
    """X₀(v) per Vorwärts-DP über gut gefärbte Pfade, ohne Schwelle.

    Aufsteigend: Farbe i empfängt von Farbe i−1 (i = 1..k−1).
    Absteigend: Farbe j empfängt von Farbe (j+1) mod L (j = L−1..k+1).
    """
    cycle_length, _, ascending, descending = chain_colors(k, length)
    if len(c) != h.n:
        raise ParameterError("Färbung passt nicht zur Knotenzahl")
    result: Dict[int, FrozenSet[int]] = {}

    def predecessor_sets(v: int, predecessor_color: int) -> FrozenSet[int]:
        collected: Set[int] = set()
        for u in h.adjacency[v]:
            if c[u] != predecessor_color:
                continue
            if predecessor_color == 0:
                if _is_source(u, c, x):
                    collected.add(u)
            else:
                collected |= result.get(u, frozenset())
        return frozenset(collected)

    for color in ascending:
        for v in range(h.n):
            if c[v] == color:
                result[v] = predecessor_sets(v, color - 1)
    for color in descending:
        for v in range(h.n):
            if c[v] == color:
                result[v] = predecessor_sets(v, (color + 1) % cycle_length)
    return result


def enumerate_X0(h: Graph, c: Coloring, x: NodeSet, k: int,
                 length: Optional[int] = None) -> Dict[int, FrozenSet[int]]:
    """Unabhängige Variante: explizite Aufzählung aller gut gefärbten Pfade ab jeder Quelle"""
    cycle_length, _, ascending, descending = chain_colors(k, length)
    found: Dict[int, Set[int]] = {v: set() for v in range(h.n) if c[v] in ascending or c[v] in descending}

    for source in range(h.n):
        if not _is_source(source, c, x):
            continue
        for chain in (ascending, descending):
            # Tiefensuche entlang der Farbfolge der Kette
            frontier = [(source, 0)]
            while frontier:
                v, depth = frontier.pop()
                if depth == len(chain):
                    continue
                wanted = chain[depth]
                for u in h.adjacency[v]:
                    if c[u] == wanted:
                        found[u].add(source)
                        frontier.append((u, depth + 1))
    return {v: frozenset(ids) for v, ids in found.items()}
