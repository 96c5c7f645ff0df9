"""Coupled kink waves for a 3-population competition system.

The travelling-wave ansatz (each density linear in the same tanh profile)
reduces the 3-population system with first-order transport to nine nonlinear
algebraic equations in (a0, a1, b0, b1, c0, c1, a, b, c, v). A closed form
exists for the symmetric parameter configuration; everything else goes
through the generic damped Newton solver.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, NonHyperbolicError, ParameterError
from .newton import fd_jacobian, newton_solve
from .polynomials import MultiPolynomialRHS
from .riccati import RiccatiKernel, make_kernel, phi

UNKNOWN_ORDER = ("a0", "a1", "b0", "b1", "c0", "c1", "a", "b", "c", "v")


@dataclass(frozen=True)
class LV3Params:
    """Growth rates r_i, interaction matrix A_ij, transport matrix D_ij."""

    r: tuple
    A: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        r = tuple(float(x) for x in self.r)
        if len(r) != 3:
            raise ConfigError("need 3 growth rates")
        object.__setattr__(self, "r", r)
        for name in ("A", "D"):
            M = np.asarray(getattr(self, name), dtype=float)
            if M.shape != (3, 3):
                raise ConfigError(f"{name} must be a 3x3 matrix")
            if not np.all(np.isfinite(M)):
                raise ConfigError(f"{name} entries must be finite")
            object.__setattr__(self, name, M)

    @classmethod
    def symmetric(cls, D11):
        """The paper's fixed configuration: unit rates and interactions,
        symmetric transport with unit off-diagonal and equal diagonal D11."""
        D = np.array([[D11, 1.0, 1.0], [1.0, D11, 1.0], [1.0, 1.0, D11]])
        return cls(r=(1.0, 1.0, 1.0), A=np.ones((3, 3)), D=D)


@dataclass(frozen=True)
class CoupledKinkSolution:
    a0: float
    a1: float
    b0: float
    b1: float
    c0: float
    c1: float
    kernel: RiccatiKernel
    v: float
    params: LV3Params

    @property
    def unknown_vector(self):
        k = self.kernel
        return np.array(
            [self.a0, self.a1, self.b0, self.b1, self.c0, self.c1, k.a, k.b, k.c, self.v]
        )

    def to_dict(self):
        u = self.unknown_vector
        return {
            "unknowns": {name: float(val) for name, val in zip(UNKNOWN_ORDER, u)},
            "xi0": self.kernel.xi0,
            "theta": self.kernel.theta,
        }


def build_residuals(params, unknowns):
    """The nine algebraic residuals, in the fixed order 1..9.

    ``unknowns`` is a vector in UNKNOWN_ORDER or a mapping with those keys.
    """
    if isinstance(unknowns, dict):
        u = [float(unknowns[k]) for k in UNKNOWN_ORDER]
    else:
        u = [float(x) for x in unknowns]
    a0, a1, b0, b1, c0, c1, a, b, c, v = u
    r1, r2, r3 = params.r
    A = params.A
    D = params.D

    res = np.empty(9)
    res[0] = (
        -D[0, 2] * c1 * a
        - (v + D[0, 0]) * a1 * a
        - r1 * A[0, 1] * a1 * b1
        + r1 * A[0, 0] * a1 ** 2
        - D[0, 1] * b1 * a
        - r1 * A[0, 2] * a1 * c1
    )
    res[1] = (
        -r1 * A[0, 1] * (a0 * b1 + a1 * b0)
        + 2.0 * r1 * A[0, 0] * a0 * a1
        - r1 * A[0, 2] * (a0 * c1 + a1 * c0)
        - r1 * a1
        - D[0, 2] * c1 * b
        - D[0, 1] * b1 * b
        - (v + D[0, 0]) * a1 * b
    )
    res[2] = (
        -(v + D[0, 0]) * a1 * c
        - r1 * A[0, 1] * a0 * b0
        - D[0, 2] * c1 * c
        - D[0, 1] * b1 * c
        - r1 * A[0, 2] * a0 * c0
        - r1 * a0
        + r1 * A[0, 0] * a0 ** 2
    )
    res[3] = (
        -D[1, 2] * c1 * a
        - D[1, 0] * a1 * a
        - r2 * A[1, 1] * b1 ** 2
        + r2 * A[1, 0] * a1 * b1
        - (v + D[1, 1]) * b1 * a
        - r2 * A[1, 2] * b1 * c1
    )
    res[4] = (
        -2.0 * r2 * A[1, 1] * b0 * b1
        + r2 * A[1, 0] * (a0 * b1 + a1 * b0)
        - r2 * A[1, 2] * (b0 * c1 + b1 * c0)
        - r2 * b1
        - D[1, 2] * c1 * b
        - (v + D[1, 1]) * b1 * b
        - D[1, 0] * a1 * b
    )
    res[5] = (
        -D[1, 0] * a1 * c
        - r2 * A[1, 1] * b0 ** 2
        - D[1, 2] * c1 * c
        - (v + D[1, 1]) * b1 * c
        - r2 * A[1, 2] * b0 * c0
        - r2 * b0
        + r2 * A[1, 0] * a0 * b0
    )
    res[6] = (
        -(v + D[2, 2]) * c1 * a
        - D[2, 0] * a1 * a
        - r3 * A[2, 1] * b1 * c1
        + r3 * A[2, 0] * a1 * c1
        - D[2, 1] * b1 * a
        - r3 * A[2, 2] * c1 ** 2
    )
    res[7] = (
        -r3 * A[2, 1] * (b0 * c1 + b1 * c0)
        + r3 * A[2, 0] * (a0 * c1 + a1 * c0)
        - 2.0 * r3 * A[2, 2] * c0 * c1
        - r3 * c1
        - (v + D[2, 2]) * c1 * b
        - D[2, 1] * b1 * b
        - D[2, 0] * a1 * b
    )
    res[8] = (
        -D[2, 0] * a1 * c
        - r3 * A[2, 1] * b0 * c0
        - (v + D[2, 2]) * c1 * c
        - D[2, 1] * b1 * c
        - r3 * A[2, 2] * c0 ** 2
        - r3 * c0
        + r3 * A[2, 0] * a0 * c0
    )
    return res


def closed_form(a1, b1, c0, b, D11, xi0=0.0):
    """The closed-form coupled kink under the symmetric configuration.

    Free parameters (a1, b1, c0, b, D11); everything else follows.
    """
    s = a1 + b1
    if s == 0.0:
        raise ParameterError("needs a1 + b1 != 0")
    if s + 4.0 * a1 * c0 == 0.0:
        raise ParameterError("needs a1 + b1 + 4 a1 c0 != 0")
    if b == 0.0:
        raise ParameterError("needs Riccati b != 0")

    c1 = -s
    v = -(4.0 * a1 * c0 + b * D11 * a1 - a1 * b + a1 - b1 * b + b * D11 * b1 + b1) / (b * s)
    c = -(c0 * (2.0 * a1 * c0 + a1 + b1) * b) / (s * (s + 4.0 * a1 * c0))
    a = -2.0 * a1 * b * s / (s + 4.0 * a1 * c0)
    a0 = -a1 * c0 / s
    b0 = -b1 * c0 / s
    if a == 0.0:
        raise ParameterError("induced Riccati a vanished (a1 b (a1+b1) = 0)")
    kernel = make_kernel(a, b, c, xi0)  # raises NonHyperbolicError if theta^2 <= 0
    params = LV3Params.symmetric(D11)
    return CoupledKinkSolution(
        a0=a0, a1=a1, b0=b0, b1=b1, c0=c0, c1=c1, kernel=kernel, v=v, params=params
    )


def solve_newton(params, guess, tol=1e-12, max_iter=50):
    """Numerically solve the nine-equation system from ``guess``.

    The system has one more unknown than equations, so the minimum-norm
    Newton step is used and the result is the nearest point on the solution
    manifold.
    """
    return newton_solve(lambda u: build_residuals(params, u), guess, tol=tol, max_iter=max_iter)


def solve_multistart(params, guess, tol=1e-12, max_iter=50, n_starts=8, spread=1e-2, seed=0):
    """Run Newton from K perturbed copies of ``guess``; de-duplicate roots."""
    rng = np.random.default_rng(seed)
    guess = np.asarray(guess, dtype=float)
    roots = []
    for k in range(int(n_starts)):
        g = guess if k == 0 else guess + spread * rng.standard_normal(guess.shape)
        try:
            x = solve_newton(params, g, tol=tol, max_iter=max_iter)
        except Exception:
            continue
        if not any(np.linalg.norm(x - r) < 1e-6 for r in roots):
            roots.append(x)
    roots.sort(key=lambda r: tuple(r))
    return roots


def eval_coupled(sol, xi):
    """The three linear-in-Phi density profiles at xi."""
    p = phi(sol.kernel, xi)
    return (sol.a0 + sol.a1 * p, sol.b0 + sol.b1 * p, sol.c0 + sol.c1 * p)


def as_pde_model(params):
    """First-order transport PDE whose travelling waves satisfy the system.

    du_i/dt = sum_k D_ik du_k/dx + R_i(u) with
    R_i = r_i u_i - r_i A_i1 u_1 u_i + r_i A_i2 u_2 u_i + r_i A_i3 u_3 u_i
    (the sign convention the nine-equation system encodes).
    """
    from .pdesim import RDModel

    terms = []
    for i in range(3):
        e_lin = tuple(1 if k == i else 0 for k in range(3))
        terms.append((e_lin, i, params.r[i]))
        for j in range(3):
            e = [1 if k == i else 0 for k in range(3)]
            e[j] += 1
            sign = -1.0 if j == 0 else 1.0
            terms.append((tuple(e), i, sign * params.r[i] * params.A[i, j]))
    reaction = MultiPolynomialRHS(3, terms)
    return RDModel(diffusion=np.zeros((3, 3)), reaction=reaction, transport=params.D)
