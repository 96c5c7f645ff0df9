"""Single-population kink construction and verification.

The travelling-wave ODE in daggered form is

    drho/dxi + Ddag * d2rho/dxi2 + sum_n alphadag_n rho^n = 0,

with Ddag = -D/v and alphadag_n = -alpha_n / v. The profile rho(xi)
propagates in the PDE drho/dt = D d2rho/dx2 + sum_n alpha_n rho^n as
rho(x - w t) with speed w = -v.
Solutions are finite series rho = sum_i s_i Phi^i in the tanh solution Phi of
a Riccati equation. ``collect_sigma`` performs the grid-free algebraic check:
substituting the series and rewriting every xi-derivative through
dPhi/dxi = a Phi^2 + b Phi + c yields a polynomial in Phi whose coefficients
must all vanish for an exact solution.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BranchError,
    ConfigError,
    DegenerateInputError,
    NoBalanceError,
    ParameterError,
)
from .polynomials import PolynomialRHS, eval_rhs
from .riccati import RiccatiKernel, make_kernel, phi


@dataclass(frozen=True)
class DaggeredEquation:
    """v-rescaled coefficients of the travelling-wave ODE."""

    D_dag: float
    alpha_dag: PolynomialRHS
    v: float

    def __post_init__(self):
        if self.v == 0.0:
            raise ConfigError("wave velocity v must be nonzero")

    @property
    def speed(self):
        """Propagation speed of rho(x - speed * t) in the undaggered PDE."""
        return -self.v

    @property
    def D(self):
        return -self.v * self.D_dag

    @property
    def alpha(self):
        """Reaction coefficients of the original PDE (alpha_n = -v * alphadag_n)."""
        return self.alpha_dag.scaled(-self.v)


@dataclass(frozen=True)
class KinkSolution:
    kernel: RiccatiKernel
    series: tuple
    equation: DaggeredEquation

    @property
    def P(self):
        return len(self.series) - 1

    def limit(self, sign):
        """rho(+inf) for sign > 0, rho(-inf) for sign < 0."""
        phi_inf = self.kernel.asymptote_plus if sign > 0 else self.kernel.asymptote_minus
        return sum(s * phi_inf ** i for i, s in enumerate(self.series))

    def to_dict(self):
        k = self.kernel
        return {
            "P": self.P,
            "series": list(self.series),
            "kernel": {"a": k.a, "b": k.b, "c": k.c, "xi0": k.xi0, "theta": k.theta},
            "v": self.equation.v,
            "D_dag": self.equation.D_dag,
            "alpha_dag": list(self.equation.alpha_dag.coefficients),
            "implied_alpha0_dag": self.equation.alpha_dag.coefficients[0],
        }

    @classmethod
    def from_dict(cls, d):
        k = d["kernel"]
        return cls(
            kernel=make_kernel(k["a"], k["b"], k["c"], k["xi0"]),
            series=tuple(float(s) for s in d["series"]),
            equation=DaggeredEquation(
                D_dag=float(d["D_dag"]),
                alpha_dag=PolynomialRHS(d["alpha_dag"]),
                v=float(d["v"]),
            ),
        )


def balance_exponent(L):
    """The series order P solving P(L-1) = 2, when integral."""
    if L != int(L) or L < 2:
        raise NoBalanceError(f"balance needs integer L >= 2, got {L}")
    L = int(L)
    if 2 % (L - 1) != 0:
        raise NoBalanceError(f"2/(L-1) is not an integer for L = {L}")
    return 2 // (L - 1)


def _conv(p, q):
    return np.convolve(p, q)


def _poly_pow(p, n):
    out = np.array([1.0])
    for _ in range(n):
        out = _conv(out, p)
    return out


def _poly_der(p):
    if len(p) == 1:
        return np.array([0.0])
    return np.array([i * p[i] for i in range(1, len(p))])


def collect_sigma(series, kernel, equation, return_scale=False):
    """Coefficients sigma_0..sigma_r of the Phi-polynomial residual.

    Every d/dxi acting on a polynomial g(Phi) is rewritten as
    g'(Phi) * (a Phi^2 + b Phi + c). The optional scale is the largest
    coefficient magnitude among the contributing terms, for relative tests.
    """
    s = np.asarray(series, dtype=float)
    if s.size < 1:
        raise ConfigError("series must have at least one coefficient")
    f = np.array([kernel.c, kernel.b, kernel.a])

    first = _conv(_poly_der(s), f)
    second = _conv(_poly_der(first), f)

    alpha = equation.alpha_dag.coefficients
    reaction = np.array([0.0])
    rho_pow = np.array([1.0])
    terms = [first, equation.D_dag * second]
    for n, a_n in enumerate(alpha):
        if n > 0:
            rho_pow = _conv(rho_pow, s)
        if a_n != 0.0:
            t = a_n * rho_pow
            terms.append(t)
            reaction = _pad_add(reaction, t)

    P = s.size - 1
    L = equation.alpha_dag.degree
    r = max(P + 2, P * L, *(len(t) - 1 for t in terms))
    sigma = np.zeros(r + 1)
    for t in (first, equation.D_dag * second, reaction):
        sigma[: len(t)] += t
    if return_scale:
        scale = max(1.0, *(float(np.max(np.abs(t))) for t in terms if t.size))
        return sigma, scale
    return sigma


def _pad_add(p, q):
    n = max(len(p), len(q))
    out = np.zeros(n)
    out[: len(p)] += p
    out[: len(q)] += q
    return out


def sigma_nullity(solution):
    """max |sigma_i| over the scale of the largest contributing term."""
    sigma, scale = collect_sigma(
        solution.series, solution.kernel, solution.equation, return_scale=True
    )
    return float(np.max(np.abs(sigma)) / scale)


def build_quadratic_kink(b, c, D_dag, alpha1_dag, alpha2_dag, xi0=0.0, v=1.0):
    """Kink for the quadratic reaction (P = L = 2), general branch.

    Inputs fix the Riccati (b, c) and the equation parameters; the
    construction returns the series coefficients, the induced Riccati a,
    and the constant reaction coefficient the equation is forced to carry:
    alpha0dag = (625 alpha1dag^2 Ddag^2 - 36) / (2500 alpha2dag Ddag^2).
    """
    if c == 0.0:
        raise ParameterError("quadratic kink needs Riccati c != 0")
    if D_dag == 0.0:
        raise ParameterError("quadratic kink needs D_dag != 0")
    if alpha2_dag == 0.0:
        raise ParameterError("quadratic kink needs alpha2_dag != 0")

    a = (25.0 * D_dag ** 2 * b ** 2 - 1.0) / (100.0 * c * D_dag ** 2)
    if a == 0.0:
        raise DegenerateInputError("induced Riccati a vanished (25 Ddag^2 b^2 = 1)")
    kernel = make_kernel(a, b, c, xi0)

    a2 = -6.0 * D_dag * a ** 2 / alpha2_dag
    a1 = -6.0 * a * (5.0 * D_dag * b + 1.0) / (5.0 * alpha2_dag)
    a0 = -(
        75.0 * D_dag ** 2 * b ** 2 + 30.0 * D_dag * b - 3.0 + 25.0 * alpha1_dag * D_dag
    ) / (50.0 * alpha2_dag * D_dag)
    alpha0_dag = (625.0 * alpha1_dag ** 2 * D_dag ** 2 - 36.0) / (
        2500.0 * alpha2_dag * D_dag ** 2
    )

    eq = DaggeredEquation(
        D_dag=D_dag, alpha_dag=PolynomialRHS([alpha0_dag, alpha1_dag, alpha2_dag]), v=v
    )
    sol = KinkSolution(kernel=kernel, series=(a0, a1, a2), equation=eq)
    return sol, alpha0_dag


def build_quadratic_kink_zero_alpha0(b, c, alpha1_dag, alpha2_dag, xi0=0.0, v=1.0):
    """Quadratic kink with no constant reaction term; forces Ddag = 6/(25 alpha1dag)."""
    if alpha1_dag == 0.0:
        raise ParameterError("zero-alpha0 branch needs alpha1_dag != 0")
    D_dag = 6.0 / (25.0 * alpha1_dag)
    sol, alpha0_dag = build_quadratic_kink(
        b, c, D_dag, alpha1_dag, alpha2_dag, xi0=xi0, v=v
    )
    # alpha0_dag vanishes identically for this Ddag up to rounding; store exact zero
    eq = DaggeredEquation(
        D_dag=D_dag, alpha_dag=PolynomialRHS([0.0, alpha1_dag, alpha2_dag]), v=sol.equation.v
    )
    return KinkSolution(kernel=sol.kernel, series=sol.series, equation=eq)


def build_cubic_kink_free(a0, a1, kernel, D_dag, v=1.0):
    """Cubic-reaction kink (P=1, L=3) with free profile: the reaction is implied.

    Solves the four collected-power relations for alphadag_0..alphadag_3;
    the profile rho = a0 + a1 Phi and the returned cubic satisfy the
    travelling-wave ODE identically.
    """
    if a1 == 0.0:
        raise ParameterError("cubic kink needs a1 != 0")
    if D_dag == 0.0:
        raise DegenerateInputError(
            "D_dag = 0 kills the cubic leading term; system degrades to degree <= 2"
        )
    a, b, c = kernel.a, kernel.b, kernel.c
    alpha3 = -2.0 * D_dag * a ** 2 / a1 ** 2
    alpha2 = a * (-3.0 * D_dag * a1 * b + 6.0 * D_dag * a * a0 - a1) / a1 ** 2
    alpha1 = -(
        a1 ** 2 * b
        + 2.0 * D_dag * a1 ** 2 * a * c
        + D_dag * a1 ** 2 * b ** 2
        - 6.0 * a * a0 * D_dag * a1 * b
        + 6.0 * D_dag * a ** 2 * a0 ** 2
        - 2.0 * a * a0 * a1
    ) / a1 ** 2
    alpha0 = (
        -3.0 * a * a0 ** 2 * D_dag * a1 * b
        + 2.0 * D_dag * a ** 2 * a0 ** 3
        - a * a0 ** 2 * a1
        - a1 ** 3 * c
        + a0 * a1 ** 2 * b
        + 2.0 * a0 * D_dag * a1 ** 2 * a * c
        + a0 * D_dag * a1 ** 2 * b ** 2
        - D_dag * a1 ** 3 * b * c
    ) / a1 ** 2

    alpha_dag = PolynomialRHS([alpha0, alpha1, alpha2, alpha3])
    eq = DaggeredEquation(D_dag=D_dag, alpha_dag=alpha_dag, v=v)
    sol = KinkSolution(kernel=kernel, series=(a0, a1), equation=eq)
    return sol, alpha_dag


def build_cubic_kink_constrained(
    alpha1_dag, alpha2_dag, alpha3_dag, D_dag, b, c, xi0=0.0, v=1.0, branch=+1
):
    """Cubic-reaction kink for a given cubic: solves for (a, a0, a1, alpha0dag).

    Needs alpha3dag * Ddag < 0 so the square root sqrt(-2 alpha3dag Ddag)
    is real. ``branch`` selects the square-root sign; both signs give valid
    solutions of the same equation (with different implied alpha0dag).
    """
    if c == 0.0:
        raise ParameterError("constrained cubic kink needs Riccati c != 0")
    if D_dag == 0.0 or alpha3_dag == 0.0:
        raise ParameterError("constrained cubic kink needs D_dag != 0 and alpha3_dag != 0")
    prod = -2.0 * alpha3_dag * D_dag
    if prod <= 0.0:
        raise BranchError("needs alpha3_dag * D_dag < 0 for a real square root")
    s = (1.0 if branch >= 0 else -1.0) * math.sqrt(prod)

    a = (
        3.0 * D_dag ** 2 * alpha3_dag * b ** 2
        + 2.0 * alpha2_dag ** 2 * D_dag
        - 6.0 * alpha1_dag * alpha3_dag * D_dag
        + alpha3_dag
    ) / (12.0 * c * D_dag ** 2 * alpha3_dag)
    if a == 0.0:
        raise DegenerateInputError("induced Riccati a vanished")
    kernel = make_kernel(a, b, c, xi0)

    a0 = ((3.0 * D_dag * b + 1.0) * s - 2.0 * alpha2_dag * D_dag) / (6.0 * D_dag * alpha3_dag)
    a1 = s * a / alpha3_dag
    alpha0_dag = -(
        alpha2_dag * a0 ** 2
        + a1 * c
        + alpha1_dag * a0
        + alpha3_dag * a0 ** 3
        + D_dag * a1 * b * c
    )

    eq = DaggeredEquation(
        D_dag=D_dag,
        alpha_dag=PolynomialRHS([alpha0_dag, alpha1_dag, alpha2_dag, alpha3_dag]),
        v=v,
    )
    sol = KinkSolution(kernel=kernel, series=(a0, a1), equation=eq)
    return sol, alpha0_dag


def apply_bc_quadratic(A1, A2, alpha1_dag, alpha2_dag, tol=1e-9):
    """Boundary conditions rho(+inf)=A1, rho(-inf)=A2 for the quadratic kink.

    Returns the forced Ddag and whether the parameter relation
    alpha1dag = -alpha2dag (A1 + A2) holds.
    """
    if alpha2_dag == 0.0:
        raise ParameterError("boundary relations need alpha2_dag != 0")
    denom = alpha1_dag + 2.0 * A1 * alpha2_dag
    if denom == 0.0:
        raise ParameterError("alpha1_dag + 2 A1 alpha2_dag must be nonzero")
    D_dag = 6.0 / (25.0 * denom)
    scale = max(1.0, abs(alpha1_dag), abs(alpha2_dag * (A1 + A2)))
    consistent = abs(alpha1_dag + alpha2_dag * (A1 + A2)) <= tol * scale
    return {"D_dag": D_dag, "consistent": consistent}


def eval_kink(solution, xi):
    """rho(xi) = sum_i s_i Phi(xi)^i."""
    p = phi(solution.kernel, xi)
    acc = np.zeros_like(np.asarray(p, dtype=float)) if not np.isscalar(p) else 0.0
    for s_i in reversed(solution.series):
        acc = acc * p + s_i
    return acc


def wave_residual_numeric(solution, xi_min, xi_max, n, oversample=4):
    """Sup-norm of the travelling-wave ODE residual by 4th-order differences.

    The profile is sampled on an oversampled uniform grid; first and second
    derivatives use 5-point central stencils. Independent of collect_sigma.
    """
    if n < 16:
        raise ConfigError("residual grid needs n >= 16")
    m = (int(n) - 1) * int(oversample) + 1
    h = (xi_max - xi_min) / (m - 1)
    xs = np.linspace(xi_min - 2 * h, xi_max + 2 * h, m + 4)
    rho = eval_kink(solution, xs)

    d1 = (-rho[4:] + 8 * rho[3:-1] - 8 * rho[1:-3] + rho[:-4]) / (12 * h)
    d2 = (-rho[4:] + 16 * rho[3:-1] - 30 * rho[2:-2] + 16 * rho[1:-3] - rho[:-4]) / (
        12 * h * h
    )
    inner = rho[2:-2]
    res = d1 + solution.equation.D_dag * d2 + eval_rhs(solution.equation.alpha_dag, inner)
    return float(np.max(np.abs(res[:: int(oversample)])))
