import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from popwaves.errors import (
    BranchError,
    NoBalanceError,
    ParameterError,
)
from popwaves.riccati import make_kernel
from popwaves.waves import (
    KinkSolution,
    apply_bc_quadratic,
    balance_exponent,
    build_cubic_kink_constrained,
    build_cubic_kink_free,
    build_quadratic_kink,
    build_quadratic_kink_zero_alpha0,
    eval_kink,
    sigma_nullity,
    wave_residual_numeric,
)

nz = st.floats(min_value=0.05, max_value=3.0, allow_nan=False)
signed_nz = st.tuples(nz, st.sampled_from([-1.0, 1.0])).map(lambda t: t[0] * t[1])
small = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False)


def test_balance_exponent_values():
    assert balance_exponent(2) == 2
    assert balance_exponent(3) == 1
    for L in (4, 5, 6):
        with pytest.raises(NoBalanceError):
            balance_exponent(L)
    with pytest.raises(NoBalanceError):
        balance_exponent(1)
    with pytest.raises(NoBalanceError):
        balance_exponent(2.5)


@settings(max_examples=60, deadline=None)
@given(small, signed_nz, signed_nz, signed_nz, signed_nz)
def test_quadratic_kink_is_algebraically_exact(b, c, D_dag, a1d, a2d):
    try:
        sol, alpha0 = build_quadratic_kink(b, c, D_dag, a1d, a2d)
    except Exception:
        return  # inadmissible draw (degenerate / non-hyperbolic)
    assert sigma_nullity(sol) < 1e-9
    assert sol.equation.alpha_dag.coefficients[0] == alpha0


@settings(max_examples=40, deadline=None)
@given(small, signed_nz, signed_nz, signed_nz)
def test_zero_constant_branch_kills_the_constant_term(b, c, a1d, a2d):
    try:
        sol = build_quadratic_kink_zero_alpha0(b, c, a1d, a2d)
    except Exception:
        return
    assert sol.equation.alpha_dag.coefficients[0] == 0.0
    assert sol.equation.D_dag == pytest.approx(6.0 / (25.0 * a1d))
    assert sigma_nullity(sol) < 1e-9


@settings(max_examples=40, deadline=None)
@given(small, signed_nz, small, signed_nz, signed_nz)
def test_cubic_free_kink_is_algebraically_exact(b, c, a0, a1, D_dag):
    try:
        kernel = make_kernel(1.0, b, c)
        sol, _ = build_cubic_kink_free(a0, a1, kernel, D_dag)
    except Exception:
        return
    assert sigma_nullity(sol) < 1e-9


@settings(max_examples=40, deadline=None)
@given(small, signed_nz, signed_nz, small, signed_nz, st.sampled_from([+1, -1]))
def test_cubic_constrained_kink_is_algebraically_exact(b, c, a1d, a2d, a3d, branch):
    D_dag = 0.5 if a3d < 0 else -0.5  # real square root needs alpha3dag * Ddag < 0
    try:
        sol, _ = build_cubic_kink_constrained(a1d, a2d, a3d, D_dag, b, c, branch=branch)
    except Exception:
        return
    assert sigma_nullity(sol) < 1e-9


def test_cubic_constrained_branch_condition():
    with pytest.raises(BranchError):
        build_cubic_kink_constrained(0.1, 0.2, 0.3, 0.5, 1.0, 0.5)


def test_builders_reject_excluded_parameters():
    with pytest.raises(ParameterError):
        build_quadratic_kink(1.0, 0.0, 0.5, 1.0, 1.0)  # c = 0
    with pytest.raises(ParameterError):
        build_quadratic_kink(1.0, 0.5, 0.0, 1.0, 1.0)  # D_dag = 0
    with pytest.raises(ParameterError):
        build_quadratic_kink_zero_alpha0(1.0, 0.5, 0.0, 1.0)  # alpha1_dag = 0


def test_numeric_residual_confirms_the_algebra():
    sol, _ = build_quadratic_kink(1.0, 0.5, -0.3, 0.8, -1.0)
    assert wave_residual_numeric(sol, -20.0, 20.0, 401) < 1e-6


def test_numeric_residual_catches_a_wrong_series():
    sol, _ = build_quadratic_kink(1.0, 0.5, -0.3, 0.8, -1.0)
    broken = KinkSolution(
        kernel=sol.kernel,
        series=(sol.series[0] + 0.1, sol.series[1], sol.series[2]),
        equation=sol.equation,
    )
    assert wave_residual_numeric(broken, -20.0, 20.0, 401) > 1e-3
    assert sigma_nullity(broken) > 1e-3


def test_limits_match_large_xi_evaluation():
    sol, _ = build_quadratic_kink(1.0, 0.5, -0.3, 0.8, -1.0)
    assert sol.limit(+1) == pytest.approx(float(eval_kink(sol, 80.0)), abs=1e-12)
    assert sol.limit(-1) == pytest.approx(float(eval_kink(sol, -80.0)), abs=1e-12)


def test_solution_round_trips_through_dict():
    sol, _ = build_quadratic_kink(1.0, 0.5, -0.3, 0.8, -1.0, xi0=0.7, v=-1.0)
    back = KinkSolution.from_dict(sol.to_dict())
    xi = np.linspace(-10, 10, 21)
    assert np.array_equal(eval_kink(back, xi), eval_kink(sol, xi))
    assert back.equation.v == sol.equation.v


def test_dagger_transform_consistency():
    # the undaggered coefficients follow from (D_dag, alpha_dag, v), both
    # scaled by the propagation speed -v
    sol, _ = build_quadratic_kink(1.0, 0.5, -0.3, 0.8, -1.0, v=-2.0)
    eq = sol.equation
    assert eq.speed == -eq.v
    assert eq.D == pytest.approx(eq.speed * eq.D_dag)
    assert np.allclose(eq.alpha.coefficients, np.asarray(eq.alpha_dag.coefficients) * eq.speed)


def test_kink_propagates_in_the_undaggered_pde():
    # evolve the profile under drho/dt = D rho'' + sum alpha_n rho^n and
    # compare with the rigidly translated exact profile
    from popwaves.pdesim import Field1D, Grid1D, RDModel, integrate
    from popwaves.polynomials import MultiPolynomialRHS, PolynomialRHS

    sol, _ = build_quadratic_kink(1.0, 0.5, 0.24, -2.0, 1.0, v=-1.0)
    eq = sol.equation
    assert eq.D > 0.0
    g = Grid1D(-20.0, 20.0, 1001)
    model = RDModel(
        diffusion=np.array([[eq.D]]),
        reaction=MultiPolynomialRHS.from_scalar(eq.alpha),
    )
    T = 1.0
    f = Field1D(grid=g, components=eval_kink(sol, g.x)[None, :])
    out = integrate(model, f, T, 0.9 * 0.4 * g.dx ** 2 / eq.D)
    exact = eval_kink(sol, g.x - eq.speed * T)
    mask = (g.x > -15) & (g.x < 15)
    assert np.max(np.abs(out.components[0][mask] - exact[mask])) < 1e-4


def test_boundary_relation_quadratic():
    A1, A2 = 1.5, 0.5
    alpha2 = -1.0
    alpha1 = -alpha2 * (A1 + A2)
    bc = apply_bc_quadratic(A1, A2, alpha1, alpha2)
    assert bc["consistent"]
    assert bc["D_dag"] == pytest.approx(6.0 / (25.0 * (alpha1 + 2 * A1 * alpha2)))
    assert not apply_bc_quadratic(A1, A2, alpha1 + 0.3, alpha2)["consistent"]
