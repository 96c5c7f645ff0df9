"""Damped Newton iteration with a forward-difference Jacobian.

Works for square and underdetermined systems; in the underdetermined case
the minimum-norm step is taken, with singular values below the
finite-difference noise floor truncated (solution manifolds often carry
symmetry directions that make the Jacobian rank-deficient at the root).
A rank-deficient Jacobian whose column space cannot reach the residual is
reported as a linear-solve error rather than silently pseudo-inverted away.
"""

import numpy as np

from .errors import NonConvergenceError, SingularJacobianError

_EPS = float(np.finfo(float).eps)


def fd_jacobian(fun, x, f0=None):
    """Forward-difference Jacobian with step sqrt(eps) * max(1, |x_i|)."""
    x = np.asarray(x, dtype=float)
    if f0 is None:
        f0 = np.asarray(fun(x), dtype=float)
    m, n = len(f0), len(x)
    J = np.empty((m, n))
    for j in range(n):
        h = np.sqrt(_EPS) * max(1.0, abs(x[j]))
        xp = x.copy()
        xp[j] += h
        J[:, j] = (np.asarray(fun(xp), dtype=float) - f0) / h
    return J, f0


# Levenberg damping factors tried each iteration, relative to the largest
# singular value; the candidate with the smallest residual wins.
_DAMPING_LADDER = (0.0, 1e-6, 1e-5, 1e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1, 3e-1, 1.0)


def newton_solve(fun, guess, tol=1e-12, max_iter=50, rcond=1e-8):
    """Solve fun(x) = 0 from ``guess``; returns x with sup-norm residual < tol.

    The step is built from the truncated SVD of the Jacobian: singular values
    below ``rcond`` times the largest are discarded (the forward-difference
    Jacobian is only sqrt(eps)-accurate, so anything smaller is noise,
    typically a symmetry direction of the solution manifold), which also
    yields the minimum-norm step for underdetermined systems. Each iteration
    evaluates a ladder of Levenberg-damped steps and takes the one with the
    smallest residual 2-norm, falling back to a halving line search; this
    handles stiff near-singular directions without crawling. Raises
    SingularJacobianError when the Jacobian vanishes or the residual points
    substantially outside its column space (a locally unsolvable system), and
    NonConvergenceError (carrying the last residual norm) on budget
    exhaustion.
    """
    x = np.asarray(guess, dtype=float).copy()
    if not np.all(np.isfinite(x)):
        raise SingularJacobianError("initial guess must be finite")
    f = np.asarray(fun(x), dtype=float)
    for _ in range(int(max_iter)):
        if np.max(np.abs(f)) < tol:
            return x
        J, _ = fd_jacobian(fun, x, f0=f)
        U, S, Vt = np.linalg.svd(J, full_matrices=False)
        if S[0] == 0.0:
            raise SingularJacobianError("Jacobian vanishes at the current iterate")
        keep = S > rcond * S[0]
        if int(np.count_nonzero(keep)) < J.shape[0]:
            coeffs = U.T @ f
            unreachable = np.linalg.norm(f - U[:, keep] @ coeffs[keep])
            if unreachable > 0.25 * np.linalg.norm(f):
                raise SingularJacobianError(
                    "Jacobian is rank-deficient and the residual lies outside "
                    "its column space: the system is locally unsolvable"
                )
        norm0 = np.linalg.norm(f)
        proj = U[:, keep].T @ f
        best = None
        for m in _DAMPING_LADDER:
            mu = m * S[0]
            d = S[keep] / (S[keep] ** 2 + mu ** 2)
            x_try = x - Vt[keep].T @ (d * proj)
            f_try = np.asarray(fun(x_try), dtype=float)
            if np.all(np.isfinite(f_try)):
                n = float(np.linalg.norm(f_try))
                if best is None or n < best[0]:
                    best = (n, x_try, f_try)
        if best is None or best[0] >= norm0:
            step = -Vt[keep].T @ (proj / S[keep])
            lam = 0.5
            for _ in range(30):
                x_try = x + lam * step
                f_try = np.asarray(fun(x_try), dtype=float)
                if np.all(np.isfinite(f_try)) and np.linalg.norm(f_try) < norm0:
                    best = (float(np.linalg.norm(f_try)), x_try, f_try)
                    break
                lam *= 0.5
            else:
                raise NonConvergenceError(
                    "line search failed to reduce the residual",
                    residual_norm=float(np.max(np.abs(f))),
                )
        x, f = best[1], best[2]
    if np.max(np.abs(f)) < tol:
        return x
    raise NonConvergenceError(
        f"no convergence in {max_iter} iterations",
        residual_norm=float(np.max(np.abs(f))),
    )
