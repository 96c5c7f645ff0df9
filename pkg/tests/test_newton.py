import numpy as np
import pytest

from popwaves.errors import NonConvergenceError, SingularJacobianError
from popwaves.newton import fd_jacobian, newton_solve


def test_fd_jacobian_of_a_quadratic_map():
    fun = lambda x: np.array([x[0] ** 2 + x[1], 3.0 * x[1]])
    J, f0 = fd_jacobian(fun, np.array([2.0, -1.0]))
    assert np.allclose(J, [[4.0, 1.0], [0.0, 3.0]], atol=1e-6)
    assert np.array_equal(f0, fun(np.array([2.0, -1.0])))


def test_newton_solves_a_square_system():
    fun = lambda x: np.array([x[0] ** 2 - 2.0, x[0] * x[1] - 1.0])
    x = newton_solve(fun, np.array([1.0, 1.0]))
    assert np.allclose(x, [np.sqrt(2.0), 1.0 / np.sqrt(2.0)], atol=1e-10)


def test_newton_underdetermined_takes_minimum_norm_step():
    # one equation, two unknowns: x + y = 1; from the origin the minimum-norm
    # solution is (0.5, 0.5)
    fun = lambda x: np.array([x[0] + x[1] - 1.0])
    x = newton_solve(fun, np.array([0.0, 0.0]))
    assert np.allclose(x, [0.5, 0.5], atol=1e-8)


def test_newton_reports_singular_jacobian():
    # dependent rows with an inconsistent right-hand side: no solution exists
    fun = lambda x: np.array([x[0] + x[1] - 1.0, 2.0 * (x[0] + x[1]) - 2.0 + 1.0])
    with pytest.raises(SingularJacobianError):
        newton_solve(fun, np.array([0.0, 0.0]))


def test_newton_handles_a_symmetric_solution_manifold():
    # f(x, y) = x y - 1 is invariant under (x, y) -> (t x, y / t); the
    # Jacobian is rank-deficient along that direction yet roots are reachable
    fun = lambda x: np.array([x[0] * x[1] - 1.0])
    x = newton_solve(fun, np.array([1.3, 0.9]))
    assert x[0] * x[1] == pytest.approx(1.0, abs=1e-12)


def test_newton_reports_nonconvergence_with_residual():
    # f = x^2 + 1 has no real root; the line search stalls near x = 0
    fun = lambda x: np.array([x[0] ** 2 + 1.0])
    with pytest.raises(NonConvergenceError) as exc:
        newton_solve(fun, np.array([3.0]), max_iter=8)
    assert exc.value.residual_norm is not None
    assert exc.value.residual_norm >= 1.0
