"""Tests für die empirischen Zufallseigenschaften"""

import math

import pytest

from core.exceptions import ParameterError
from detection.facts import (
    FactEstimate, coloring_success_frequency, heavy_neighbor_frequency, selection_size_frequency,
)


def test_coloring_success_meets_bound():
    estimate = coloring_success_frequency(2, 1.0, trials=1000, seed=0)
    assert estimate.bound == pytest.approx(1 - math.exp(-1))
    assert estimate.holds


def test_selection_size_meets_bound():
    estimate = selection_size_frequency(64, 2, 1.0, trials=2000, seed=1)
    assert estimate.frequency > 0.9
    assert estimate.holds


@pytest.mark.parametrize("alpha", [1.0, 4.0])
def test_heavy_neighbor_meets_bound(alpha):
    estimate = heavy_neighbor_frequency(64, 2, alpha, trials=2000, seed=2)
    assert estimate.bound == pytest.approx(1 - math.exp(-alpha / 8))
    assert estimate.holds


def test_estimates_are_reproducible():
    assert coloring_success_frequency(2, 0.5, 300, seed=7) == coloring_success_frequency(2, 0.5, 300, seed=7)


def test_tolerance_shrinks_with_trials():
    assert FactEstimate(0.5, 0.5, 100).tolerance > FactEstimate(0.5, 0.5, 10_000).tolerance
    assert not FactEstimate(0.1, 0.5, 10_000).holds


@pytest.mark.parametrize("trials, alpha", [(0, 1.0), (10, 0.0)])
def test_invalid_arguments_raise(trials, alpha):
    with pytest.raises(ParameterError):
        selection_size_frequency(16, 2, alpha, trials)
