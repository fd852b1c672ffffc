"""Analytisches Rundenmodell der Quanten-Pipeline: Amplifikation, Durchmesser-Reduktion
und die Gesamtkosten der C_{2k}-Erkennung. Es wird kein Quantenzustand simuliert."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from core.exceptions import ParameterError
from utils.config import (
    Config, COST_SWEEP_EXPONENTS, CROSSOVER_SCAN_EXPONENTS, DEFAULT_EPSILON,
)
from utils.logger import log_with_prefix, get_normalized_logger

logger = get_normalized_logger('cost')

SOURCE_CLOSED_FORM = "closed-form"
SOURCE_MEASURED = "measured"

# T(n, D) eines Basisalgorithmus
RoundFunction = Callable[[int, float], float]


def _ceil(x: float) -> int:
    # Rundungsrauschen bei exakten Ganzzahlen nicht aufrunden
    return math.ceil(x - 1e-9 * max(1.0, abs(x)))


@dataclass(frozen=True)
class CostParams:
    """Eingaben des Amplifikationsmodells; alle Konstanten werden mit ausgegeben"""

    n: int
    D: float
    epsilon: float
    delta: float
    T: float
    c_amp: float = 1.0
    c_dec: float = 1.0
    c_D: float = 1.0
    amp_log_exponent: int = 2
    dec_log_exponent: int = 2

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"n muss ≥ 1 sein: {self.n}")
        if not 0.0 < self.epsilon <= 1.0:
            raise ParameterError(f"ε muss in (0,1] liegen: {self.epsilon}")
        if not 0.0 < self.delta < 1.0:
            raise ParameterError(f"δ muss in (0,1) liegen: {self.delta}")
        if self.D < 1:
            raise ParameterError(f"D muss ≥ 1 sein: {self.D}")
        if self.T < 0:
            raise ParameterError(f"T darf nicht negativ sein: {self.T}")
        for name, (low, high) in Config.get_cost_ranges().items():
            value = getattr(self, name)
            if not low <= value <= high:
                raise ParameterError(f"{name}={value} außerhalb [{low}, {high}]")

    @classmethod
    def with_defaults(cls, n: int, D: float, epsilon: float, delta: float, T: float,
                      constants: Optional[Dict[str, Any]] = None) -> "CostParams":
        merged = Config.get_cost_defaults()
        merged.update(constants or {})
        return cls(n, D, epsilon, delta, T, **merged)

    def constants(self) -> Dict[str, Any]:
        return {name: getattr(self, name) for name in Config.get_cost_defaults()}


def amplification_log(delta: float, exponent: int = 2) -> int:
    """⌈ln(1/δ)⌉^exponent"""
    return _ceil(math.log(1.0 / delta)) ** exponent


def amplified_rounds(cp: CostParams) -> float:
    """c_amp · ⌈ln(1/δ)⌉² · (1/√ε) · (D + T)"""
    return cp.c_amp * amplification_log(cp.delta, cp.amp_log_exponent) * (cp.D + cp.T) / math.sqrt(cp.epsilon)


def cluster_log(n: int) -> int:
    if n < 2:
        raise ParameterError(f"n muss ≥ 2 sein: {n}")
    return _ceil(math.log2(n))


def diameter_reduced_rounds(n: int, k: int, T_fn: RoundFunction, c_dec: float = 1.0, c_D: float = 1.0,
                            exponent: int = 2) -> float:
    """c_dec · ⌈log₂ n⌉² · (T(n, c_D·k·⌈log₂ n⌉) + k)"""
    log_n = cluster_log(n)
    return c_dec * log_n ** exponent * (T_fn(n, c_D * k * log_n) + k)


def repetitions(k: int, epsilon: float = DEFAULT_EPSILON) -> int:
    """K = ⌈ε̂·(2k)^{2k}⌉"""
    return math.ceil(math.log(3.0 / epsilon) * (2 * k) ** (2 * k))


def closed_form_tau(n: int, k: int, epsilon: float = DEFAULT_EPSILON) -> float:
    """Ungeklemmtes τ = k·2^k·n·ε̂·2k²/n^{1/k}"""
    eps_hat = math.log(3.0 / epsilon)
    return k * 2 ** k * n * eps_hat * 2 * k ** 2 / n ** (1.0 / k)


def closed_form_base_rounds(k: int, epsilon: float = DEFAULT_EPSILON) -> int:
    """4·k·K Runden der randomisierten Variante"""
    return 4 * k * repetitions(k, epsilon)


@dataclass
class QuantumCostBreakdown:
    n: int
    k: int
    delta: float
    tau: float
    epsilon: float
    base_T: float
    cluster_diameter: float
    amplified: float
    rounds: float
    tau_source: str
    T_source: str
    constants: Dict[str, Any] = field(default_factory=dict)
    polylog_exponents: Dict[str, int] = field(default_factory=dict)

    @property
    def polylog_factor(self) -> float:
        """Alle polylogarithmischen Faktoren und der additive Term D + T"""
        c = self.constants
        return (c['c_dec'] * cluster_log(self.n) ** self.polylog_exponents['decomposition']
                * c['c_amp'] * amplification_log(self.delta, self.polylog_exponents['amplification'])
                * (self.cluster_diameter + self.base_T))

    @property
    def corrected(self) -> float:
        return self.rounds / self.polylog_factor

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["corrected"] = self.corrected
        return data


def quantum_c2k_rounds(n: int, k: int, delta: float, measured_T: Optional[float] = None,
                       measured_tau: Optional[float] = None,
                       constants: Optional[Dict[str, Any]] = None) -> QuantumCostBreakdown:
    """Gesamtmodell: Basis T = Runden der randomisierten Variante, ε = 1/(3τ),
    amplifiziert und anschließend durchmesser-reduziert"""
    if k < 2:
        raise ParameterError(f"k muss ≥ 2 sein: {k}")
    merged = Config.get_cost_defaults()
    merged.update(constants or {})

    tau = measured_tau if measured_tau is not None else closed_form_tau(n, k)
    if tau < 1:
        raise ParameterError(f"τ muss ≥ 1 sein: {tau}")
    base_T = measured_T if measured_T is not None else closed_form_base_rounds(k)
    epsilon = 1.0 / (3.0 * tau)

    def amplified_at(size: int, D: float) -> float:
        return amplified_rounds(CostParams.with_defaults(size, D, epsilon, delta, base_T, merged))

    cluster_diameter = merged['c_D'] * k * cluster_log(n)
    rounds = diameter_reduced_rounds(n, k, amplified_at, merged['c_dec'], merged['c_D'], merged['dec_log_exponent'])
    return QuantumCostBreakdown(
        n=n, k=k, delta=delta, tau=tau, epsilon=epsilon, base_T=base_T,
        cluster_diameter=cluster_diameter,
        amplified=amplified_at(n, cluster_diameter),
        rounds=rounds,
        tau_source=SOURCE_MEASURED if measured_tau is not None else SOURCE_CLOSED_FORM,
        T_source=SOURCE_MEASURED if measured_T is not None else SOURCE_CLOSED_FORM,
        constants=merged,
        polylog_exponents={
            "amplification": merged['amp_log_exponent'],
            "decomposition": merged['dec_log_exponent'],
        },
    )


def classical_rounds(n: int, k: int, epsilon: float = DEFAULT_EPSILON) -> float:
    """Klassische Schranke K·k·τ"""
    return repetitions(k, epsilon) * k * closed_form_tau(n, k, epsilon)


def sweep(k: int, exponents: Sequence[int] = COST_SWEEP_EXPONENTS, delta: float = 1.0 / 3.0,
          constants: Optional[Dict[str, Any]] = None) -> List[Dict[str, Any]]:
    """Zeilen für n = 2^e, e im geschlossenen Intervall ``exponents``"""
    herkunft = 'cost.py'
    low, high = exponents
    rows = []
    for e in range(low, high + 1):
        n = 2 ** e
        b = quantum_c2k_rounds(n, k, delta, constants=constants)
        rows.append({
            "n": n,
            "log2_n": e,
            "k": k,
            "delta": delta,
            "tau": b.tau,
            "epsilon": b.epsilon,
            "base_T": b.base_T,
            "cluster_diameter": b.cluster_diameter,
            "rounds": b.rounds,
            "corrected": b.corrected,
            "classical": classical_rounds(n, k),
            "amp_log_exponent": b.polylog_exponents["amplification"],
            "dec_log_exponent": b.polylog_exponents["decomposition"],
            "source": b.tau_source,
        })
    log_with_prefix(logger, 'debug', 'COST', herkunft, '🧮 Sweep k=%d über n=2^%d..2^%d: %d Zeilen', k, low, high, len(rows))
    return rows


def fit_exponent(rows: Sequence[Dict[str, Any]]) -> float:
    """Steigung von log(korrigierte Runden) gegen log n"""
    if len(rows) < 2:
        raise ParameterError("Mindestens zwei Zeilen für die Anpassung nötig")
    x = np.log2(np.array([row["n"] for row in rows], dtype=float))
    y = np.log2(np.array([row["corrected"] for row in rows], dtype=float))
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def expected_exponent(k: int) -> float:
    return 0.5 - 1.0 / (2 * k)


def crossover_threshold(k: int, delta: float = 1.0 / 3.0, exponents: Sequence[int] = CROSSOVER_SCAN_EXPONENTS,
                        constants: Optional[Dict[str, Any]] = None) -> Optional[int]:
    """Kleinstes n = 2^e, ab dem das Quantenmodell im gesamten Suchbereich unter K·k·τ liegt"""
    herkunft = 'cost.py'
    low, high = exponents
    threshold: Optional[int] = None
    for e in range(high, low - 1, -1):
        n = 2 ** e
        if quantum_c2k_rounds(n, k, delta, constants=constants).rounds < classical_rounds(n, k):
            threshold = n
        else:
            break
    log_with_prefix(logger, 'debug', 'COST', herkunft, '🧮 Übergang k=%d: %s', k,
                    f"n=2^{int(math.log2(threshold))}" if threshold else "keiner")
    return threshold
