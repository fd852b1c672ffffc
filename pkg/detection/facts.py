"""Empirische Schätzer für die Zufallseigenschaften von Färbung und Auswahl"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from core.exceptions import ParameterError
from core.graph import integer_root_ceil
from utils.config import BINOMIAL_SIGMAS
from utils.statistics import binomial_sigma, meets_lower_bound

_CHUNK = 512


@dataclass(frozen=True)
class FactEstimate:
    frequency: float
    bound: float
    trials: int

    @property
    def tolerance(self) -> float:
        return BINOMIAL_SIGMAS * binomial_sigma(self.bound, self.trials)

    @property
    def holds(self) -> bool:
        return meets_lower_bound(self.frequency, self.bound, self.trials)


def _check(trials: int, alpha: float) -> None:
    if trials < 1:
        raise ParameterError(f"trials muss ≥ 1 sein: {trials}")
    if alpha <= 0:
        raise ParameterError(f"α muss > 0 sein: {alpha}")


def coloring_success_frequency(k: int, alpha: float, trials: int, seed: int = 0) -> FactEstimate:
    """Anteil der Versuche, in denen ein festes 2k-Tupel in einer von K = ⌈α(2k)^{2k}⌉
    Iterationen fortlaufend gefärbt wird; Schranke 1−e^{−α}."""
    _check(trials, alpha)
    palette = 2 * k
    iterations = math.ceil(alpha * palette ** palette)
    # eine uniforme Färbung der 2k Knoten entspricht einem uniformen Code in [0, (2k)^{2k})
    target = sum(i * palette ** i for i in range(palette))
    rng = np.random.default_rng([seed, k, 1])
    hits = 0
    for start in range(0, trials, _CHUNK):
        chunk = min(_CHUNK, trials - start)
        codes = rng.integers(0, palette ** palette, size=(chunk, iterations), dtype=np.int64)
        hits += int((codes == target).any(axis=1).sum())
    return FactEstimate(hits / trials, 1.0 - math.exp(-alpha), trials)


def selection_size_frequency(n: int, k: int, alpha: float, trials: int, seed: int = 0) -> FactEstimate:
    """Anteil mit |S| ≤ 2αn^{1−1/k} bei p = α/n^{1/k}; Schranke 1−e^{−α/3}"""
    _check(trials, alpha)
    p = min(1.0, alpha / n ** (1.0 / k))
    limit = 2 * alpha * n ** (1.0 - 1.0 / k)
    rng = np.random.default_rng([seed, n, k, 2])
    hits = 0
    for start in range(0, trials, _CHUNK):
        chunk = min(_CHUNK, trials - start)
        sizes = (rng.random((chunk, n)) < p).sum(axis=1)
        hits += int((sizes <= limit).sum())
    return FactEstimate(hits / trials, 1.0 - math.exp(-alpha / 3.0), trials)


def heavy_neighbor_frequency(n: int, k: int, alpha: float, trials: int, seed: int = 0) -> FactEstimate:
    """Anteil mit |N(v)∩S| ≥ α/2 für einen Knoten mit deg(v) > n^{1/k}; Schranke 1−e^{−α/8}"""
    _check(trials, alpha)
    p = min(1.0, alpha / n ** (1.0 / k))
    degree = integer_root_ceil(n, k)
    if degree ** k <= n:
        degree += 1
    rng = np.random.default_rng([seed, n, k, 3])
    hits = 0
    for start in range(0, trials, _CHUNK):
        chunk = min(_CHUNK, trials - start)
        selected = (rng.random((chunk, degree)) < p).sum(axis=1)
        hits += int((selected >= alpha / 2.0).sum())
    return FactEstimate(hits / trials, 1.0 - math.exp(-alpha / 8.0), trials)
