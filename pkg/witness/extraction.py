"""Konstruktion eines 2k-Zyklus durch S aus einem Knoten v mit ℍ(v,0) ≠ ∅.

Der Zyklus besteht aus drei Pfaden:
  P   alternierend zwischen S und W₀, Kanten in ℍ(v,2q), von s nach w
  P'  von w über V₁ … V_{i−1} nach v (Herkunft der Kante an w)
  P'' von s über eine unbenutzte Kante {s, w''} und deren Herkunft nach v
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Set, Tuple

from core.exceptions import WitnessError
from core.graph import Graph
from oracle.cycles import validate_cycle
from utils.logger import log_with_prefix, get_normalized_logger
from witness.sparsification import (
    EdgeSubset, LevelSets, SparsifiedFamily, build_sparsification, provenance_path,
)

logger = get_normalized_logger('extraction')


@dataclass(frozen=True)
class CycleWitness:
    v: int
    i: int
    cycle: Tuple[int, ...]
    P: Tuple[int, ...]
    P_prime: Tuple[int, ...]
    P_double_prime: Tuple[int, ...]

    @property
    def edge_count(self) -> int:
        return (len(self.P) - 1) + (len(self.P_prime) - 1) + (len(self.P_double_prime) - 1)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "v": self.v,
            "i": self.i,
            "cycle": list(self.cycle),
            "P": list(self.P),
            "P'": list(self.P_prime),
            "P''": list(self.P_double_prime),
        }


def _lowest(candidates: Iterable[int], excluded: Set[int], what: str) -> int:
    for u in candidates:
        if u not in excluded:
            return u
    raise WitnessError(f"Keine freie Wahl für {what}")


def _grow_alternating_path(chain: List[EdgeSubset], q: int, odd_gap: bool) -> List[int]:
    """Pfad von s nach w mit 2(k−i) Knoten, beidseitig aus einem S-Knoten von ℍ(v,0) gewachsen"""
    s1 = min(chain[0].deg_s)
    path = [s1]
    used_s, used_w = {s1}, set()
    for gamma in range(q):
        odd, even = chain[2 * gamma + 1], chain[2 * gamma + 2]
        w_left = _lowest(odd.star_s(path[0]), used_w, f"w_{2 * gamma + 2}")
        used_w.add(w_left)
        w_right = _lowest(odd.star_s(path[-1]), used_w, f"w'_{2 * gamma + 2}")
        used_w.add(w_right)
        s_left = _lowest(even.star_w(w_left), used_s, f"s_{2 * gamma + 3}")
        used_s.add(s_left)
        s_right = _lowest(even.star_w(w_right), used_s, f"s'_{2 * gamma + 3}")
        used_s.add(s_right)
        path = [s_left, w_left] + path + [w_right, s_right]

    if odd_gap:
        w = _lowest(chain[2 * q].star_s(path[0]), used_w, "w")
        return list(reversed([w] + path))
    # gerade Differenz: rechten Endpunkt streichen, Pfad läuft von s nach w'_{2q}
    return path[:-1]


def extract_cycle(g: Graph, ls: LevelSets, v: int, fam: SparsifiedFamily) -> Optional[CycleWitness]:
    """Zyklus der Länge 2k durch S über v, oder None wenn ℍ(v,0) leer ist"""
    herkunft = 'extraction.py'
    ns = fam.per_node.get(v)
    if ns is None:
        raise WitnessError(f"Knoten {v} liegt in keiner Ebene V_i mit i ≥ 1")
    if not len(ns.chain[0]):
        log_with_prefix(logger, 'debug', 'EXTRACT', herkunft, 'Kein Zeuge: ℍ(%d,0) ist leer', v)
        return None

    k, i, q = ls.k, ns.level, ns.q
    P = _grow_alternating_path(ns.chain, q, (k - i) % 2 == 1)
    s, w = P[0], P[-1]

    P_prime = provenance_path(fam, v, (P[-2], w))

    excluded = EdgeSubset()
    for vj in P_prime[1:-1]:
        excluded = excluded.union(fam.out(vj))
    on_P = set(P)
    w2 = None
    for candidate in ns.hv.star_s(s):
        if candidate not in on_P and (s, candidate) not in excluded:
            w2 = candidate
            break
    if w2 is None:
        raise WitnessError(f"Keine Kante {{{s}, w''}} in ℍ({v}) außerhalb von P und OUT(v'_j)")
    P_double_prime = [s] + provenance_path(fam, v, (s, w2))

    cycle = tuple(P + P_prime[1:] + list(reversed(P_double_prime[1:-1])))
    if not validate_cycle(g, cycle, length=2 * k, must_intersect=ls.S):
        log_with_prefix(logger, 'error', 'EXTRACT', herkunft, '❌ Ungültiger Zeuge bei v=%d: %s', v, list(cycle))
        raise WitnessError(f"Konstruierter Zyklus {cycle} ist kein einfacher {2 * k}-Zyklus durch S")

    witness = CycleWitness(v, i, cycle, tuple(P), tuple(P_prime), tuple(P_double_prime))
    log_with_prefix(logger, 'debug', 'EXTRACT', herkunft, '✅ Zeuge bei v=%d (Ebene %d): %s', v, i, list(cycle))
    return witness


def density_pipeline(g: Graph, ls: LevelSets) -> Tuple[SparsifiedFamily, Optional[CycleWitness]]:
    """Ausdünnung, erster Knoten mit ℍ(v,0) ≠ ∅ (Ebene, dann Kennung), Zeuge"""
    fam = build_sparsification(g, ls)
    core = fam.nonempty_core()
    if not core:
        return fam, None
    return fam, extract_cycle(g, ls, core[0], fam)
