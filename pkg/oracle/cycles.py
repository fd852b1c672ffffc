"""Brute-Force-Orakel: Zyklensuche, Zyklusvalidierung und Taillenweite"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from core.exceptions import OracleSizeError, ParameterError
from core.graph import Coloring, Graph, NodeSet
from utils.config import ORACLE_MAX_NODES, GIRTH_MAX_NODES
from utils.logger import log_with_prefix, get_normalized_logger

logger = get_normalized_logger('cycles')


@dataclass(frozen=True)
class CycleQuery:
    """Suchauftrag: Zielänge plus optionale Nebenbedingungen"""

    length: int
    must_intersect: Optional[NodeSet] = None
    coloring: Optional[Coloring] = None
    at_most: bool = False

    def __post_init__(self):
        if self.length < 3:
            raise ParameterError(f"Zykluslänge muss ≥ 3 sein: {self.length}")
        if self.coloring is not None and self.at_most:
            raise ParameterError("Farbbedingung nur mit exakter Länge")

    def lengths(self) -> range:
        return range(3, self.length + 1) if self.at_most else range(self.length, self.length + 1)


def _check_size(g: Graph, limit: int, operation: str) -> None:
    if g.n > limit:
        raise OracleSizeError(f"{operation}: n={g.n} überschreitet die Orakelgrenze {limit}")


def canonical_cycle(vertices: Sequence[int]) -> Tuple[int, ...]:
    """Rotation zur kleinsten ID, Orientierung zum kleineren zweiten Element"""
    length = len(vertices)
    if length == 0:
        return ()
    start = min(range(length), key=lambda i: vertices[i])
    rotated = [vertices[(start + j) % length] for j in range(length)]
    if length > 2 and rotated[-1] < rotated[1]:
        rotated = [rotated[0]] + rotated[:0:-1]
    return tuple(rotated)


def _iter_cycles(g: Graph, length: int, coloring: Optional[Coloring]) -> Iterator[Tuple[int, ...]]:
    """Alle einfachen Zyklen der Länge ``length`` in kanonischer Form.

    Startknoten ist stets die kleinste ID des Zyklus; Duplikate durch die
    zweite Orientierung werden über path[1] < path[-1] ausgeschlossen.
    """
    adjacency = g.adjacency
    for s in range(g.n):
        if coloring is not None and coloring[s] >= length:
            continue
        path = [s]
        on_path = {s}
        # Stapel aus (Nachbar-Iterator, Richtung) parallel zu path
        stack: List[Tuple[Iterator[int], int]] = [(iter(adjacency[s]), 0)]
        while stack:
            neighbors, direction = stack[-1]
            advanced = False
            for u in neighbors:
                if u <= s or u in on_path:
                    continue
                depth = len(path)
                step_direction = direction
                if coloring is not None:
                    if depth == 1:
                        delta = (coloring[u] - coloring[s]) % length
                        if delta == 1:
                            step_direction = 1
                        elif delta == length - 1:
                            step_direction = -1
                        else:
                            continue
                    elif coloring[u] != (coloring[s] + step_direction * depth) % length:
                        continue
                if depth + 1 == length:
                    if path[1] < u and g.has_edge(u, s):
                        yield tuple(path + [u])
                    continue
                path.append(u)
                on_path.add(u)
                stack.append((iter(adjacency[u]), step_direction))
                advanced = True
                break
            if not advanced:
                stack.pop()
                last = path.pop()
                if last != s:
                    on_path.discard(last)


def find_cycle(g: Graph, q: Union[CycleQuery, int]) -> Optional[Tuple[int, ...]]:
    """Sucht erschöpfend einen einfachen Zyklus, der alle Bedingungen erfüllt"""
    herkunft = 'cycles.py'
    if isinstance(q, int):
        q = CycleQuery(q)
    _check_size(g, ORACLE_MAX_NODES, "find_cycle")
    if q.coloring is not None and len(q.coloring) != g.n:
        raise ParameterError("Färbung passt nicht zur Knotenzahl")
    for length in q.lengths():
        for cycle in _iter_cycles(g, length, q.coloring):
            if q.must_intersect is not None and not any(v in q.must_intersect for v in cycle):
                continue
            log_with_prefix(logger, 'debug', 'ORACLE', herkunft, 'Zyklus gefunden: %s', list(cycle))
            return cycle
    return None


def find_all_cycles(g: Graph, length: int) -> List[Tuple[int, ...]]:
    """Alle einfachen Zyklen der Länge ``length`` (kanonisch, sortiert)"""
    if length < 3:
        raise ParameterError(f"Zykluslänge muss ≥ 3 sein: {length}")
    _check_size(g, ORACLE_MAX_NODES, "find_all_cycles")
    return sorted(_iter_cycles(g, length, None))


def well_colored_cycle(g: Graph, c: Coloring, length: int) -> Optional[Tuple[int, ...]]:
    return find_cycle(g, CycleQuery(length, coloring=c))


def is_consecutively_colored(vertices: Sequence[int], c: Coloring) -> bool:
    length = len(vertices)
    if length == 0:
        return False
    first = c[vertices[0]]
    if first >= length:
        return False
    for direction in (1, -1):
        if all(c[v] == (first + direction * j) % length for j, v in enumerate(vertices)):
            return True
    return False


def validate_cycle(g: Graph, vertices: Sequence[int], length: Optional[int] = None,
                   must_intersect: Optional[NodeSet] = None, coloring: Optional[Coloring] = None) -> bool:
    """True genau dann, wenn ``vertices`` ein einfacher Zyklus in g mit allen Bedingungen ist"""
    vertices = list(vertices)
    if len(vertices) < 3 or len(set(vertices)) != len(vertices):
        return False
    if length is not None and len(vertices) != length:
        return False
    if any(not 0 <= v < g.n for v in vertices):
        return False
    for i, v in enumerate(vertices):
        if not g.has_edge(v, vertices[(i + 1) % len(vertices)]):
            return False
    if must_intersect is not None and not any(v in must_intersect for v in vertices):
        return False
    if coloring is not None and not is_consecutively_colored(vertices, coloring):
        return False
    return True


def girth(g: Graph) -> Union[int, float]:
    """Taillenweite per BFS von jedem Knoten; ∞ für Wälder"""
    _check_size(g, GIRTH_MAX_NODES, "girth")
    best = math.inf
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] >= best:
                break
            for w in g.adjacency[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best if best == math.inf else int(best)
