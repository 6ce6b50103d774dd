import math

import numpy as np
import pytest

from curvemax.multiplier import (g_profile, induction_diagnostics,
                                 log_growth_experiment, nu_hat, sup_search)
from curvemax.norms import dilate, rho


def profile_reference_1d(x, k_lo=-220, k_hi=64):
    """Direct summation of the closed-form one-dimensional profile."""
    total = 0.0
    for k in range(k_lo, k_hi + 1):
        eta = (2.0 ** k) * x
        v = 2.0 * np.sinc(2.0 * eta) - np.sinc(eta) - math.exp(-(2.0 ** k) * abs(x))
        total += v * v
    return math.sqrt(total)


def test_nu_hat_oracles():
    assert nu_hat(np.array([1.0])) == pytest.approx(-math.exp(-1.0), abs=1e-10)
    assert nu_hat(np.array([0.5])) == pytest.approx(
        -2.0 / math.pi - math.exp(-0.5), abs=1e-10)


def test_nu_hat_vanishes_at_extreme_scales():
    xi = np.array([0.7, 1.3])
    assert abs(nu_hat(xi, k=-40)) < 1e-10
    assert abs(nu_hat(xi, k=6, tol=1e-8)) < 0.05


@pytest.mark.parametrize("x", [0.03, 0.4, 1.0, 5.7, 40.0])
def test_profile_matches_direct_summation_1d(x):
    prof = g_profile(np.array([x]), tol=1e-7)
    assert prof.g_value == pytest.approx(profile_reference_1d(x), abs=1e-6)
    assert not prof.envelope_only


def test_profile_entries_are_moduli():
    prof = g_profile(np.array([0.9, 0.4]), tol=1e-3)
    vals = np.asarray(prof.values)
    assert np.all(vals >= 0.0)
    assert prof.g_value >= math.sqrt(float(np.sum(vals ** 2))) - 1e-12


def test_lower_bound_never_exceeds_value():
    rng = np.random.default_rng(12)
    for _ in range(10):
        d = int(rng.integers(1, 5))
        xi = rng.standard_normal(d) * 10.0 ** rng.uniform(-1, 1)
        prof = g_profile(xi, tol=1e-3)
        assert prof.g_lower <= prof.g_value
        assert prof.tail_bound >= 0.0


def test_dyadic_dilation_invariance():
    rng = np.random.default_rng(6)
    for _ in range(8):
        d = int(rng.integers(1, 4))
        xi = rng.standard_normal(d)
        xi[-1] = np.sign(xi[-1]) + xi[-1]  # keep the top entry well off zero
        a = g_profile(xi, tol=1e-5)
        b = g_profile(dilate(xi, 2.0), tol=1e-5)
        allowance = a.tail_bound + b.tail_bound + 2e-5
        assert abs(a.g_value - b.g_value) <= allowance


def test_zero_padding_enters_for_free():
    x = 0.8
    base = g_profile(np.array([x]), tol=1e-6)
    padded = g_profile(np.array([x, 0.0, 0.0]), tol=1e-6)
    assert padded.g_value == base.g_value
    assert padded.values == base.values


def test_sup_search_dominates_dense_grid():
    row = sup_search(1, budget=400, seed=0, tol=1e-4)
    grid = np.concatenate([np.linspace(0.05, 4.0, 400),
                           10.0 ** np.linspace(-4, 3, 200)])
    dense = max(g_profile(np.array([x]), tol=1e-4).g_value for x in grid)
    assert row.sup_estimate >= dense - 5e-4
    assert row.g_lower <= row.sup_estimate
    assert row.evals <= 400 + 10


def test_growth_table_monotone_and_fits():
    table = log_growth_experiment(d_list=(1, 2, 4), budget=120, seed=0)
    sups = [r.sup_estimate for r in table.rows]
    assert sups == sorted(sups)
    assert all(np.isfinite(r.sup_estimate) for r in table.rows)
    assert np.isfinite(table.fit_slope)
    assert len(table.residuals) == 3


def test_induction_diagnostics_structure():
    xi = np.array([0.3, 1.7, -0.2, 0.9])
    diag = induction_diagnostics(xi, tol=1e-3)
    assert diag.j_pivot in (3, 4)
    assert diag.threshold == pytest.approx(
        abs(xi[diag.j_pivot - 1]) ** (-1.0 / diag.j_pivot), rel=1e-12)
    assert len(diag.y) == 4
    assert diag.y[2] == diag.y[3] == 0.0
    assert np.isfinite(diag.term_far) and diag.term_far >= 0.0
    assert np.isfinite(diag.term_near) and diag.term_near >= 0.0


def test_induction_terms_bounded_on_sample():
    rng = np.random.default_rng(21)
    for d in (2, 4):
        for _ in range(5):
            xi = rng.standard_normal(d) * 10.0 ** rng.uniform(-1, 2)
            diag = induction_diagnostics(xi, tol=5e-3)
            assert diag.term_far + diag.term_far_tail < 100.0
            assert diag.term_near + diag.term_near_tail < 100.0
