import numpy as np
import pytest

from popwaves.errors import ConfigError
from popwaves.pdesim import Grid1D
from popwaves.polynomials import PolynomialRHS
from popwaves.stochastic import (
    DiffusionModel1D,
    ensemble_density,
    langevin_ensemble,
    step_normals,
)


def _ou(b=2.0):
    return DiffusionModel1D(PolynomialRHS([0.0, -1.0]), b)


def test_step_normals_are_deterministic_and_standard():
    a = step_normals(42, 7, 5000)
    b = step_normals(42, 7, 5000)
    assert np.array_equal(a, b)
    c = step_normals(42, 8, 5000)
    assert not np.array_equal(a, c)
    # moments of a large draw
    assert abs(np.mean(a)) < 5.0 / np.sqrt(5000)
    assert abs(np.var(a) - 1.0) < 0.1


def test_different_seeds_give_different_streams():
    assert not np.array_equal(step_normals(3, 0, 64), step_normals(4, 0, 64))


def test_ensembles_are_bit_reproducible():
    m = _ou()
    r1 = langevin_ensemble(m, 0.5, 1e-2, 1.0, 500, seed=9)
    r2 = langevin_ensemble(m, 0.5, 1e-2, 1.0, 500, seed=9)
    assert np.array_equal(r1.positions, r2.positions)
    r3 = langevin_ensemble(m, 0.5, 1e-2, 1.0, 500, seed=10)
    assert not np.array_equal(r1.positions, r3.positions)


def test_zero_noise_limit_matches_the_ode():
    # with tiny noise the ensemble mean follows dx/dt = -x closely
    m = DiffusionModel1D(PolynomialRHS([0.0, -1.0]), 1e-12)
    res = langevin_ensemble(m, 1.0, 1e-3, 1.0, 4)
    assert np.allclose(res.positions, np.exp(-1.0), atol=1e-3)


def test_pure_diffusion_variance_grows_like_bt():
    m = DiffusionModel1D(PolynomialRHS([0.0]), 2.0)
    res = langevin_ensemble(m, 0.0, 1e-2, 2.0, 20000, seed=1)
    var = np.var(res.positions)
    # Var = b t = 4; 3 standard errors of the variance estimate
    se = 4.0 * np.sqrt(2.0 / (20000 - 1))
    assert abs(var - 4.0) < 3 * se


def test_ou_relaxed_variance():
    # stationary variance of dx = -x dt + sqrt(2) dW is 1
    res = langevin_ensemble(_ou(), 0.0, 1e-3, 6.0, 20000, seed=2)
    var = np.var(res.positions)
    exact = 1.0 - np.exp(-12.0)
    se = exact * np.sqrt(2.0 / (20000 - 1))
    assert abs(var - exact) < 3 * se


def test_absorption_freezes_paths_and_records_times():
    # strong downward drift, absorbing barrier at 0
    m = DiffusionModel1D(PolynomialRHS([-5.0]), 0.01)
    res = langevin_ensemble(m, 0.5, 1e-3, 1.0, 64, seed=3, absorb_at=0.0)
    assert np.all(res.absorbed)
    assert np.all(np.isnan(res.positions))
    t = res.absorption_times
    assert np.all(np.isfinite(t)) and np.all(t > 0.0)
    assert np.mean(t) == pytest.approx(0.1, rel=0.1)  # distance/speed = 0.5/5


def test_blow_up_is_flagged_per_path_not_fatal():
    m = DiffusionModel1D(PolynomialRHS([0.0, 0.0, 0.0, 1.0]), 1e-6)  # dx/dt = x^3
    x0 = np.concatenate([np.full(4, 5.0), np.zeros(4)])
    res = langevin_ensemble(m, x0, 1e-2, 1.0, 8, seed=4)
    assert res.blown_up[:4].all()
    assert not res.blown_up[4:].any()
    assert np.isnan(res.positions[:4]).all()
    assert np.isfinite(res.positions[4:]).all()


def test_input_validation():
    with pytest.raises(ConfigError):
        langevin_ensemble(_ou(), 0.0, -1e-3, 1.0, 10)
    with pytest.raises(ConfigError):
        langevin_ensemble(_ou(), 0.0, 1e-3, 1.0, 0)
    with pytest.raises(ConfigError):
        langevin_ensemble(_ou(), 0.0, 3e-3, 1.0, 10)  # not a whole number of steps


def test_ensemble_density_integrates_to_one_inside_the_grid():
    res = langevin_ensemble(_ou(), 0.0, 1e-2, 2.0, 5000, seed=5)
    grid = Grid1D(-6.0, 6.0, 121)
    dens = ensemble_density(res.positions, grid)
    assert np.sum(dens) * grid.dx == pytest.approx(1.0, abs=1e-6)
