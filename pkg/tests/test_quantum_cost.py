"""Tests für das analytische Rundenmodell der Quanten-Pipeline"""

import math

import pytest

from core.exceptions import ParameterError
from quantum.cost import (
    CostParams, SOURCE_CLOSED_FORM, SOURCE_MEASURED, amplification_log, amplified_rounds, classical_rounds,
    closed_form_base_rounds, closed_form_tau, crossover_threshold, diameter_reduced_rounds, expected_exponent,
    fit_exponent, quantum_c2k_rounds, repetitions, sweep,
)


def _params(**kwargs):
    base = {"n": 64, "D": 3.0, "epsilon": 1.0, "delta": math.exp(-1), "T": 7.0}
    base.update(kwargs)
    return CostParams(**base)


def test_amplified_rounds_reference_value():
    assert amplified_rounds(_params()) == pytest.approx(10.0)


def test_quartering_epsilon_doubles_rounds():
    base = amplified_rounds(_params(epsilon=0.4))
    assert amplified_rounds(_params(epsilon=0.1)) == pytest.approx(2 * base)


def test_rounds_linear_in_diameter_plus_base():
    base = amplified_rounds(_params(D=3.0, T=7.0))
    assert amplified_rounds(_params(D=6.0, T=14.0)) == pytest.approx(2 * base)


@pytest.mark.parametrize("delta", [0.5, 1 / 3, 0.1, 1e-3, 1e-6])
def test_squaring_delta_at_most_quadruples(delta):
    assert amplified_rounds(_params(delta=delta ** 2)) <= 4 * amplified_rounds(_params(delta=delta)) + 1e-9


def test_amplification_log_exponent():
    assert amplification_log(math.exp(-3), 2) == 9
    assert amplification_log(math.exp(-3), 1) == 3
    assert amplification_log(0.5, 0) == 1


@pytest.mark.parametrize("kwargs", [
    {"epsilon": 0.0}, {"epsilon": 1.5}, {"delta": 1.0}, {"D": 0.5}, {"T": -1.0}, {"c_amp": 0.0},
    {"amp_log_exponent": 9},
])
def test_invalid_cost_params_raise(kwargs):
    with pytest.raises(ParameterError):
        _params(**kwargs)


def test_diameter_reduction_composes_round_function():
    seen = []

    def t_fn(n, D):
        seen.append((n, D))
        return 100.0

    rounds = diameter_reduced_rounds(1024, 2, t_fn)
    assert rounds == pytest.approx(10 ** 2 * (100.0 + 2))
    assert seen == [(1024, 2 * 10)]


def test_closed_forms():
    assert repetitions(2) == math.ceil(math.log(9) * 256)
    assert closed_form_base_rounds(2) == 4 * 2 * repetitions(2)
    assert closed_form_tau(2 ** 20, 2) == pytest.approx(2 * 4 * 2 ** 20 * math.log(9) * 8 / 2 ** 10)


def test_breakdown_reports_constants_and_sources():
    b = quantum_c2k_rounds(2 ** 16, 2, 1 / 3)
    assert b.tau_source == SOURCE_CLOSED_FORM and b.T_source == SOURCE_CLOSED_FORM
    assert b.epsilon == pytest.approx(1 / (3 * b.tau))
    assert b.constants["c_amp"] == 1.0
    assert b.polylog_exponents == {"amplification": 2, "decomposition": 2}
    data = b.to_dict()
    assert data["corrected"] == pytest.approx(b.corrected)


def test_measured_inputs_are_marked():
    b = quantum_c2k_rounds(2 ** 10, 2, 1 / 3, measured_T=500.0, measured_tau=64.0)
    assert b.tau == 64.0 and b.base_T == 500.0
    assert b.tau_source == SOURCE_MEASURED and b.T_source == SOURCE_MEASURED


def test_constants_scale_rounds():
    plain = quantum_c2k_rounds(2 ** 12, 2, 1 / 3).rounds
    scaled = quantum_c2k_rounds(2 ** 12, 2, 1 / 3, constants={"c_amp": 2.0}).rounds
    assert scaled == pytest.approx(2 * plain, rel=1e-3)


def test_invalid_model_inputs_raise():
    with pytest.raises(ParameterError):
        quantum_c2k_rounds(2 ** 10, 1, 1 / 3)
    with pytest.raises(ParameterError):
        quantum_c2k_rounds(2 ** 10, 2, 1 / 3, measured_tau=0.5)
    with pytest.raises(ParameterError):
        fit_exponent([])


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_fitted_exponent_matches_expected(k):
    rows = sweep(k, (10, 30))
    assert len(rows) == 21
    assert fit_exponent(rows) == pytest.approx(expected_exponent(k), abs=0.02)


def test_k2_exponent_is_one_quarter():
    assert expected_exponent(2) == 0.25


@pytest.mark.parametrize("k", [2, 3, 4])
def test_doubling_ratio_at_large_n(k):
    n = 2 ** 30
    ratio = quantum_c2k_rounds(2 * n, k, 1 / 3).corrected / quantum_c2k_rounds(n, k, 1 / 3).corrected
    assert ratio == pytest.approx(2 ** expected_exponent(k), rel=0.05)


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_crossover_exists(k):
    threshold = crossover_threshold(k)
    assert threshold is not None
    assert quantum_c2k_rounds(threshold, k, 1 / 3).rounds < classical_rounds(threshold, k)
    assert quantum_c2k_rounds(2 ** 100, k, 1 / 3).rounds < classical_rounds(2 ** 100, k)


def test_sweep_rows_have_decomposition():
    row = sweep(3, (10, 11))[0]
    assert row["n"] == 1024 and row["log2_n"] == 10
    assert {"tau", "epsilon", "base_T", "cluster_diameter", "rounds", "corrected", "classical", "source"} <= set(row)
