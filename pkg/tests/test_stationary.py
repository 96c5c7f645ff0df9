import numpy as np
import pytest

from popwaves.errors import ConfigError, NonNormalizableError, TruncationError
from popwaves.pdesim import Grid1D
from popwaves.polynomials import PolynomialRHS
from popwaves.stochastic import (
    DiffusionModel1D,
    pdf_extrema,
    stationary_pdf_absorbing_origin,
    stationary_pdf_full_line,
    stationary_pdf_pinned,
)
from popwaves.stochastic.model import log_weight, potential


def _ou(b=2.0):
    # linear restoring drift X = -x: stationary density is standard normal
    # when b = 2
    return DiffusionModel1D(PolynomialRHS([0.0, -1.0]), b)


def test_potential_and_log_weight_closed_forms():
    m = _ou()
    xs = np.linspace(-3, 3, 13)
    assert np.allclose(potential(m, xs), 0.5 * xs ** 2)
    assert np.allclose(log_weight(m, xs), -0.5 * xs ** 2)


def test_full_line_density_is_the_standard_normal():
    grid = Grid1D(-8.0, 8.0, 1601)
    dens = stationary_pdf_full_line(_ou(), grid, tail_tol=1e-12)
    exact = np.exp(-grid.x ** 2 / 2) / np.sqrt(2 * np.pi)
    assert np.max(np.abs(dens.values - exact)) < 1e-8
    assert dens.mass == pytest.approx(1.0, abs=1e-12)


def test_full_line_rejects_nonconfining_drift():
    with pytest.raises(NonNormalizableError):
        stationary_pdf_full_line(
            DiffusionModel1D(PolynomialRHS([0.0, 1.0]), 2.0), Grid1D(-5, 5, 101)
        )


def test_full_line_truncation_guard():
    with pytest.raises(TruncationError):
        stationary_pdf_full_line(_ou(), Grid1D(-2.0, 2.0, 101), tail_tol=1e-10)


def test_absorbing_density_satisfies_the_stationary_equation():
    # (b/2) p' - X p must be a (nonzero) constant flux
    model = DiffusionModel1D(PolynomialRHS([0.1, 0.3, 0.0, -0.4]), 2.0)
    grid = Grid1D(0.0, 6.0, 1201)
    dens = stationary_pdf_absorbing_origin(model, grid)
    x, p = grid.x, dens.values
    dp = np.gradient(p, grid.dx, edge_order=2)
    drift = np.array([0.1 + 0.3 * xi - 0.4 * xi ** 3 for xi in x])
    flux = 0.5 * model.noise * dp - drift * p
    inner = flux[5:-5]
    assert np.std(inner) < 1e-3 * np.max(np.abs(inner))
    assert np.mean(np.abs(inner)) > 0.0
    assert dens.values[0] == 0.0  # absorbing at the origin
    assert dens.mass == pytest.approx(1.0, abs=1e-12)


def test_absorbing_needs_grid_starting_at_zero():
    with pytest.raises(ConfigError):
        stationary_pdf_absorbing_origin(_ou(), Grid1D(-1.0, 5.0, 101))


def test_pinned_reduces_to_absorbing_at_zero():
    model = DiffusionModel1D(PolynomialRHS([0.1, 0.3, 0.0, -0.4]), 2.0)
    grid = Grid1D(0.0, 6.0, 601)
    absorbing = stationary_pdf_absorbing_origin(model, grid)
    pinned = stationary_pdf_pinned(model, grid, 0.0)
    assert np.max(np.abs(pinned.values - absorbing.values)) < 1e-12


def test_pinned_reduces_to_zero_flux_solution():
    # pinning p(0) to the zero-flux value e^Psi / int e^Psi makes kappa = 0
    model = DiffusionModel1D(PolynomialRHS([0.1, 0.3, 0.0, -0.4]), 2.0)
    grid = Grid1D(0.0, 6.0, 601)
    psi = log_weight(model, grid.x)
    E = np.exp(psi)
    J1 = np.trapezoid(E, dx=grid.dx)
    pinned = stationary_pdf_pinned(model, grid, 1.0 / J1)
    assert np.max(np.abs(pinned.values - E / J1)) < 1e-12


def test_pinned_value_is_respected_and_validated():
    model = DiffusionModel1D(PolynomialRHS([0.1, 0.3, 0.0, -0.4]), 2.0)
    grid = Grid1D(0.0, 6.0, 601)
    dens = stationary_pdf_pinned(model, grid, 0.05)
    assert dens.values[0] > 0.0
    assert dens.mass == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ConfigError):
        stationary_pdf_pinned(model, grid, -0.1)
    with pytest.raises(NonNormalizableError):
        # far above the zero-flux value the bracket must dip negative
        stationary_pdf_pinned(model, grid, 100.0)


def test_extrema_of_a_double_well_match_the_drift_roots():
    # drift x - x^3: stationary density peaks at +-1, dips at 0
    model = DiffusionModel1D(PolynomialRHS([0.0, 1.0, 0.0, -1.0]), 0.5)
    grid = Grid1D(-4.0, 4.0, 1601)
    dens = stationary_pdf_full_line(model, grid, tail_tol=1e-8)
    ext = pdf_extrema(dens)
    kinds = [k for _, _, k in ext]
    xs = [x for x, _, _ in ext]
    assert kinds == ["max", "min", "max"]
    assert np.allclose(xs, [-1.0, 0.0, 1.0], atol=1e-4)


def test_extrema_of_a_monotone_free_density():
    grid = Grid1D(-8.0, 8.0, 801)
    dens = stationary_pdf_full_line(_ou(), grid, tail_tol=1e-12)
    ext = pdf_extrema(dens)
    assert len(ext) == 1 and ext[0][2] == "max"
    assert abs(ext[0][0]) < 1e-8
