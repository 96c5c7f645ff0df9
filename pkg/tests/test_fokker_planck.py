import numpy as np
import pytest

from popwaves.errors import ConfigError, SupportError
from popwaves.pdesim import Grid1D
from popwaves.polynomials import PolynomialRHS
from popwaves.stochastic import (
    DensityOnGrid,
    DiffusionModel1D,
    fp_evolve,
    lyapunov_H,
    stationary_pdf_full_line,
)


def _ou():
    return DiffusionModel1D(PolynomialRHS([0.0, -1.0]), 2.0)


def _grid():
    return Grid1D(-6.0, 6.0, 241)


def _dt(model, grid):
    return 0.9 * 0.4 * grid.dx ** 2 / model.noise


def _gaussian(grid, mu, sigma):
    v = np.exp(-((grid.x - mu) ** 2) / (2 * sigma ** 2))
    v /= grid.dx * np.sum(v)
    return DensityOnGrid(grid=grid, values=v, tail_ratio=0.0)


def test_stationary_density_is_a_discrete_fixed_point():
    m, g = _ou(), _grid()
    p0 = stationary_pdf_full_line(m, g, tail_tol=1e-6)
    res = fp_evolve(m, p0, 1.0, _dt(m, g))
    assert np.max(np.abs(res.density.values - p0.values)) < 1e-12
    assert res.mass_drift < 1e-14


def test_mass_is_conserved_to_round_off():
    m, g = _ou(), _grid()
    res = fp_evolve(m, _gaussian(g, 1.5, 0.4), 5.0, _dt(m, g), n_snapshots=10)
    assert res.mass_drift < 1e-12
    assert res.times[0] == 0.0 and res.times[-1] == pytest.approx(5.0)
    assert res.snapshots.shape[0] == len(res.times)


def test_relaxation_to_the_stationary_density():
    m, g = _ou(), _grid()
    p0 = stationary_pdf_full_line(m, g, tail_tol=1e-6)
    res = fp_evolve(m, _gaussian(g, 1.5, 0.4), 15.0, _dt(m, g))
    l1 = g.dx * np.sum(np.abs(res.density.values - p0.values))
    assert l1 < 1e-3


def test_relative_entropy_decreases_monotonically():
    m, g = _ou(), _grid()
    p0 = stationary_pdf_full_line(m, g, tail_tol=1e-6)
    res = fp_evolve(m, _gaussian(g, 1.0, 0.5), 4.0, _dt(m, g), n_snapshots=40)
    H = [
        lyapunov_H(DensityOnGrid(grid=g, values=s, tail_ratio=0.0), p0)
        for s in res.snapshots
    ]
    assert all(h2 <= h1 + 1e-12 for h1, h2 in zip(H, H[1:]))
    assert H[0] > H[-1] >= -1e-12


def test_lyapunov_H_vanishes_only_at_the_reference():
    m, g = _ou(), _grid()
    p0 = stationary_pdf_full_line(m, g, tail_tol=1e-6)
    assert lyapunov_H(p0, p0) == 0.0
    assert lyapunov_H(_gaussian(g, 0.5, 0.3), p0) > 0.0


def test_lyapunov_H_support_violation():
    g = _grid()
    p = _gaussian(g, 0.0, 0.5)
    zero_ref = DensityOnGrid(grid=g, values=np.zeros(g.n), tail_ratio=0.0)
    with pytest.raises(SupportError):
        lyapunov_H(p, zero_ref)
    g2 = Grid1D(-6.0, 6.0, 121)
    with pytest.raises(ConfigError):
        lyapunov_H(p, _gaussian(g2, 0.0, 0.5))


def test_stability_and_peclet_guards():
    m, g = _ou(), _grid()
    p = _gaussian(g, 0.0, 0.5)
    with pytest.raises(ConfigError):
        fp_evolve(m, p, 1.0, 0.5 * g.dx ** 2)  # above 0.4 dx^2 / b
    stiff = DiffusionModel1D(PolynomialRHS([0.0, -100.0]), 2.0)
    with pytest.raises(ConfigError):
        fp_evolve(stiff, p, 1.0, 1e-6)  # grid Peclet >= 2


def test_partial_final_step_reaches_t_end_exactly():
    m, g = _ou(), _grid()
    dt = _dt(m, g)
    res = fp_evolve(m, _gaussian(g, 0.5, 0.4), 10.5 * dt, dt)
    assert res.times[-1] == pytest.approx(10.5 * dt, rel=1e-12)
