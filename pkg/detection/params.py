"""Konstanten der Erkennungsalgorithmen und Rollenmengen U, S, W"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Any, Dict, Optional

import numpy as np

from core.exceptions import ParameterError
from core.graph import Graph, NodeSet, is_light
from utils.config import DEFAULT_EPSILON, STREAM_SELECTION

# Schwellenregeln der Varianten
TAU_GLOBAL = "global"       # τ = ⌈k·2^k·n·p⌉
TAU_BOUNDED = "bounded"     # τ = ⌈2·n·p⌉
TAU_ODD = "odd"             # Aktivierung 1/n


@dataclass(frozen=True)
class DetectionParams:
    """Alle Konstanten (k, ε, ε̂, p, K, τ) plus markierte Overrides"""

    n: int
    k: int
    epsilon: float = DEFAULT_EPSILON
    colors: Optional[int] = None
    tau_rule: str = TAU_GLOBAL
    p_override: Optional[float] = None
    K_override: Optional[int] = None
    tau_override: Optional[int] = None
    early_stop: bool = False

    def __post_init__(self):
        if self.colors is None:
            object.__setattr__(self, 'colors', 2 * self.k)
        minimum_k = 1 if self.tau_rule == TAU_ODD else 2
        if self.k < minimum_k:
            raise ParameterError(f"k muss ≥ {minimum_k} sein: {self.k}")
        if self.n < 1:
            raise ParameterError(f"n muss ≥ 1 sein: {self.n}")
        if not 0.0 < self.epsilon < 1.0:
            raise ParameterError(f"ε muss in (0,1) liegen: {self.epsilon}")
        if self.tau_rule not in (TAU_GLOBAL, TAU_BOUNDED, TAU_ODD):
            raise ParameterError(f"Unbekannte Schwellenregel: {self.tau_rule}")
        if self.p_override is not None and not 0.0 < self.p_override <= 1.0:
            raise ParameterError(f"p-Override muss in (0,1] liegen: {self.p_override}")
        if self.K_override is not None and self.K_override < 1:
            raise ParameterError(f"K-Override muss ≥ 1 sein: {self.K_override}")
        if self.tau_override is not None and self.tau_override < 1:
            raise ParameterError(f"τ-Override muss ≥ 1 sein: {self.tau_override}")

    @classmethod
    def for_variant(cls, variant: str, n: int, k: int, epsilon: float = DEFAULT_EPSILON, **overrides) -> "DetectionParams":
        """Standardparameter einer Variante (even, even_low_prob, odd, bounded)"""
        if variant in ("even", "even_low_prob"):
            return cls(n, k, epsilon, **overrides)
        if variant == "odd":
            return cls(n, k, epsilon, colors=2 * k + 1, tau_rule=TAU_ODD, **overrides)
        if variant == "bounded":
            return cls(n, k, epsilon, tau_rule=TAU_BOUNDED, **overrides)
        raise ParameterError(f"Unbekannte Variante: {variant}")

    def for_pass(self, ell: int) -> "DetectionParams":
        """Parameter des Durchlaufs ℓ der Variante für beschränkte Längen"""
        return replace(self, k=ell, colors=2 * ell)

    @property
    def eps_hat(self) -> float:
        return math.log(3.0 / self.epsilon)

    @property
    def p_formula(self) -> float:
        return self.eps_hat * 2 * self.k ** 2 / self.n ** (1.0 / self.k)

    @property
    def p(self) -> float:
        if self.p_override is not None:
            return self.p_override
        return min(1.0, self.p_formula)

    @property
    def K(self) -> int:
        if self.K_override is not None:
            return self.K_override
        return math.ceil(self.eps_hat * self.colors ** self.colors)

    @property
    def tau(self) -> int:
        if self.tau_override is not None:
            return self.tau_override
        if self.tau_rule == TAU_GLOBAL:
            return max(1, math.ceil(self.k * 2 ** self.k * self.n * self.p))
        if self.tau_rule == TAU_BOUNDED:
            return max(1, math.ceil(2 * self.n * self.p))
        return self.n

    @property
    def cycle_length(self) -> int:
        return self.colors

    @property
    def overrides(self) -> Dict[str, bool]:
        return {
            "p": self.p_override is not None,
            "K": self.K_override is not None,
            "tau": self.tau_override is not None,
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "epsilon": self.epsilon,
            "eps_hat": self.eps_hat,
            "p": self.p,
            "K": self.K,
            "tau": self.tau,
            "colors": self.colors,
            "tau_rule": self.tau_rule,
            "overrides": self.overrides,
            "early_stop": self.early_stop,
        }


@dataclass(frozen=True)
class RoleSets:
    """Leichte Knoten U, ausgewählte Knoten S und Zeugenkandidaten W"""

    U: NodeSet
    S: NodeSet
    W: NodeSet

    def to_dict(self) -> Dict[str, Any]:
        return {"U": list(self.U.ids()), "S": list(self.S.ids()), "W": list(self.W.ids())}


def light_nodes(g: Graph, k: int) -> NodeSet:
    return NodeSet(np.array([is_light(g.degree(v), g.n, k) for v in range(g.n)], dtype=bool))


def draw_selection(n: int, p: float, seed: int, stream: int = 0) -> NodeSet:
    """Jeder Knoten wählt sich unabhängig mit Wahrscheinlichkeit p aus"""
    rng = np.random.default_rng([seed, STREAM_SELECTION, stream])
    return NodeSet(rng.random(n) < p)


def selected_neighbor_counts(g: Graph, s: NodeSet) -> np.ndarray:
    return np.array([sum(1 for u in g.adjacency[v] if s.mask[u]) for v in range(g.n)], dtype=np.int64)


def build_role_sets(g: Graph, params: DetectionParams, seed: int,
                    forced_selection: Optional[NodeSet] = None, stream: int = 0) -> RoleSets:
    """Baut U, S, W.

    Gerade Variante: W = {u ∉ S : |N(u)∩S| ≥ k²}.
    Beschränkte Variante: W = N(S), alle Nachbarn von S.
    """
    U = light_nodes(g, params.k)
    S = forced_selection if forced_selection is not None else draw_selection(g.n, params.p, seed, stream)
    if S.n != g.n:
        raise ParameterError("Auswahlmenge passt nicht zur Knotenzahl")
    counts = selected_neighbor_counts(g, S)
    if params.tau_rule == TAU_BOUNDED:
        W = NodeSet(counts > 0)
    else:
        W = NodeSet((counts >= params.k ** 2) & ~S.mask)
    return RoleSets(U, S, W)
