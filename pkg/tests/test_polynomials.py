import numpy as np
import pytest
from hypothesis import given, strategies as st

from popwaves.errors import ConfigError, DegenerateInputError
from popwaves.polynomials import (
    MultiPolynomialRHS,
    PolynomialRHS,
    eval_rhs,
    holling2_taylor,
    real_roots,
)

coeff_lists = st.lists(
    st.floats(min_value=-10, max_value=10, allow_nan=False, allow_subnormal=False),
    min_size=1,
    max_size=7,
)


@given(coeff_lists, st.floats(min_value=-5, max_value=5, allow_nan=False))
def test_horner_matches_naive_power_sum(coeffs, x):
    poly = PolynomialRHS(coeffs)
    naive = sum(c * x ** n for n, c in enumerate(coeffs))
    assert eval_rhs(poly, x) == pytest.approx(naive, rel=1e-12, abs=1e-9)


@given(coeff_lists)
def test_derivative_of_antiderivative_roundtrips(coeffs):
    poly = PolynomialRHS(coeffs)
    back = poly.antiderivative().derivative()
    assert np.allclose(back.coefficients, poly.coefficients, rtol=1e-15, atol=0)


def test_eval_on_arrays_matches_scalar():
    poly = PolynomialRHS([1.0, -2.0, 0.5])
    xs = np.linspace(-3, 3, 11)
    assert np.allclose(eval_rhs(poly, xs), [eval_rhs(poly, float(x)) for x in xs])


def test_degree_ignores_trailing_zeros():
    assert PolynomialRHS([1.0, 2.0, 0.0]).degree == 1
    assert PolynomialRHS([0.0]).degree == 0
    assert PolynomialRHS([0.0]).is_zero


def test_nonfinite_coefficients_rejected():
    with pytest.raises(ConfigError):
        PolynomialRHS([1.0, float("nan")])
    with pytest.raises(ConfigError):
        eval_rhs(PolynomialRHS([1.0]), float("inf"))


def test_real_roots_logistic():
    # r rho (1 - rho) has roots exactly {0, 1}
    roots = real_roots(PolynomialRHS([0.0, 1.5, -1.5]), (-2, 2))
    assert np.allclose(roots, [0.0, 1.0], atol=1e-10)


def test_real_roots_shifted_cubic_oracle():
    # (x-1)(x-2)(x+3) = x^3 - 7x + 6
    roots = real_roots(PolynomialRHS([6.0, -7.0, 0.0, 1.0]), (-5, 5))
    assert np.allclose(roots, [-3.0, 1.0, 2.0], atol=1e-10)


def test_real_roots_rejects_zero_polynomial():
    with pytest.raises(DegenerateInputError):
        real_roots(PolynomialRHS([0.0]), (-1, 1))


def test_holling2_taylor_geometric_oracle():
    # a rho / (1 + a h rho) = sum_{n>=1} a (-a h)^(n-1) rho^n; check by
    # summing the series well inside the radius of convergence
    a, h = 2.0, 0.25
    poly = holling2_taylor(a, h, order=30)
    rho = 0.3  # |a h rho| = 0.15
    assert eval_rhs(poly, rho) == pytest.approx(a * rho / (1 + a * h * rho), rel=1e-12)
    assert poly.coefficients[0] == 0.0


def test_holling2_order_validated():
    with pytest.raises(ConfigError):
        holling2_taylor(1.0, 1.0, 0)


def test_multipolynomial_from_scalar_matches():
    poly = PolynomialRHS([0.5, 0.0, -1.0])
    multi = MultiPolynomialRHS.from_scalar(poly)
    rho = np.array([[0.2, 1.7, -0.4]])
    assert np.allclose(multi.eval_component(0, rho), eval_rhs(poly, rho[0]))


def test_multipolynomial_validates_terms():
    with pytest.raises(ConfigError):
        MultiPolynomialRHS(2, [((1,), 0, 1.0)])  # wrong exponent arity
    with pytest.raises(ConfigError):
        MultiPolynomialRHS(2, [((1, 0), 5, 1.0)])  # bad component
