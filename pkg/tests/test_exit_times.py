import numpy as np
import pytest

from popwaves.errors import ConfigError, DivergenceError, HorizonError
from popwaves.polynomials import PolynomialRHS
from popwaves.stochastic import (
    DiffusionModel1D,
    exit_time,
    exit_time_curve,
    mc_exit_time,
)


def test_ballistic_limit_oracle():
    # constant drift -10 with vanishing noise: exit from 1 down to 0 takes
    # distance / speed = 0.1
    m = DiffusionModel1D(PolynomialRHS([-10.0]), 1e-4)
    assert exit_time(m, 0.0, 1.0) == pytest.approx(0.1, rel=1e-4)


def test_exit_time_at_the_threshold_is_zero():
    m = DiffusionModel1D(PolynomialRHS([-1.0]), 1.0)
    assert exit_time(m, 0.0, 0.0) == 0.0
    with pytest.raises(ConfigError):
        exit_time(m, 0.5, 0.2)


def test_curve_is_monotone_and_matches_pointwise_evaluation():
    m = DiffusionModel1D(PolynomialRHS([0.01, 0.2, 0.1, -0.05]), 2.0)
    rho0 = np.array([0.5, 4.0, 2.0, 1.0])
    F = exit_time_curve(m, 0.0, rho0)
    order = np.argsort(rho0)
    assert np.all(np.diff(F[order]) > 0.0)
    for r, f in zip(rho0, F):
        assert f == pytest.approx(exit_time(m, 0.0, r), rel=1e-6)


def test_more_negative_drift_exits_faster():
    rho0 = np.linspace(0.5, 4.0, 8)
    slow = exit_time_curve(DiffusionModel1D(PolynomialRHS([0.01, -0.3, 0.1, -0.02]), 2.0), 0.0, rho0)
    fast = exit_time_curve(DiffusionModel1D(PolynomialRHS([0.01, -0.6, 0.1, -0.02]), 2.0), 0.0, rho0)
    assert np.all(fast < slow)


def test_nonconfining_drift_is_rejected():
    with pytest.raises(DivergenceError):
        exit_time(DiffusionModel1D(PolynomialRHS([0.0, 1.0]), 2.0), 0.0, 1.0)


def test_mc_agrees_with_quadrature():
    m = DiffusionModel1D(PolynomialRHS([0.01, 0.2, 0.1, -0.05]), 2.0)
    quad = exit_time(m, 0.0, 1.0)
    mc = mc_exit_time(m, 0.0, 1.0, 1e-3, 2000, 120.0, seed=0)
    assert mc.n_absorbed >= 0.99 * 2000
    assert mc.mean == pytest.approx(quad, rel=0.12)
    assert mc.stderr > 0.0


def test_mc_horizon_guard():
    m = DiffusionModel1D(PolynomialRHS([0.01, 0.2, 0.1, -0.05]), 2.0)
    with pytest.raises(HorizonError):
        mc_exit_time(m, 0.0, 1.0, 1e-3, 200, 2.0, seed=0)


def test_empty_curve_and_bad_inputs():
    m = DiffusionModel1D(PolynomialRHS([-1.0]), 1.0)
    assert exit_time_curve(m, 0.0, []).size == 0
    with pytest.raises(ConfigError):
        exit_time_curve(m, 0.0, [1.0, -0.5])
