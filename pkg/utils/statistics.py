"""Statistik-Hilfsfunktionen für Monte-Carlo-Versuche"""

import math
from typing import Dict, Sequence, Tuple

import numpy as np
from scipy import stats

from utils.config import WILSON_CONFIDENCE, BINOMIAL_SIGMAS


def wilson_interval(successes: int, trials: int, confidence: float = WILSON_CONFIDENCE) -> Tuple[float, float]:
    """Wilson-Score-Intervall für eine Binomialrate"""
    if trials <= 0:
        return (0.0, 1.0)
    result = stats.binomtest(int(successes), int(trials))
    ci = result.proportion_ci(confidence_level=confidence, method='wilson')
    return (float(ci.low), float(ci.high))


def binomial_sigma(p: float, trials: int) -> float:
    """Standardabweichung der empirischen Frequenz bei Erfolgswahrscheinlichkeit p"""
    if trials <= 0:
        return float('inf')
    return math.sqrt(max(p * (1.0 - p), 0.0) / trials)


def meets_lower_bound(frequency: float, bound: float, trials: int, sigmas: float = BINOMIAL_SIGMAS) -> bool:
    """frequency ≥ bound innerhalb von ``sigmas`` Standardabweichungen"""
    return frequency >= bound - sigmas * binomial_sigma(bound, trials)


def round_percentiles(rounds: Sequence[int], qs: Sequence[float] = (50, 90, 99, 100)) -> Dict[str, float]:
    if len(rounds) == 0:
        return {f"p{int(q)}": 0.0 for q in qs}
    values = np.percentile(np.asarray(rounds, dtype=float), qs)
    return {f"p{int(q)}": float(v) for q, v in zip(qs, values)}
