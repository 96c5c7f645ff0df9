"""Polynomial reaction terms: evaluation, real roots, Holling type-II expansion."""

import math

import numpy as np

from .errors import ConfigError, DegenerateInputError


def _check_finite(name, value):
    if not math.isfinite(value):
        raise ConfigError(f"{name} must be finite, got {value!r}")


class PolynomialRHS:
    """A scalar polynomial reaction term sum(alpha[n] * rho**n).

    Coefficients are stored densely in ascending order; ``alpha[n]``
    multiplies ``rho**n``. Immutable after construction.
    """

    def __init__(self, coefficients):
        coeffs = [float(c) for c in coefficients]
        if not coeffs:
            coeffs = [0.0]
        for c in coeffs:
            _check_finite("coefficient", c)
        self._coeffs = tuple(coeffs)

    @property
    def coefficients(self):
        return self._coeffs

    @property
    def degree(self):
        for n in range(len(self._coeffs) - 1, -1, -1):
            if self._coeffs[n] != 0.0:
                return n
        return 0

    @property
    def is_zero(self):
        return all(c == 0.0 for c in self._coeffs)

    def __call__(self, rho):
        return eval_rhs(self, rho)

    def derivative(self):
        d = [n * c for n, c in enumerate(self._coeffs)][1:]
        return PolynomialRHS(d or [0.0])

    def antiderivative(self):
        """Term-wise antiderivative with zero constant term."""
        return PolynomialRHS([0.0] + [c / (n + 1) for n, c in enumerate(self._coeffs)])

    def scaled(self, factor):
        return PolynomialRHS([factor * c for c in self._coeffs])

    def __repr__(self):
        return f"PolynomialRHS({list(self._coeffs)})"

    def __eq__(self, other):
        return isinstance(other, PolynomialRHS) and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)


class MultiPolynomialRHS:
    """Sparse polynomial reaction terms for N interacting populations.

    ``terms`` is a list of ``(exponents, component, coefficient)`` where
    ``exponents`` is an N-tuple of non-negative integers and ``component``
    selects which population's rate the monomial contributes to.
    """

    def __init__(self, n_populations, terms):
        if n_populations < 1:
            raise ConfigError("population count must be positive")
        self.n_populations = int(n_populations)
        cleaned = []
        for exponents, component, coeff in terms:
            exps = tuple(int(e) for e in exponents)
            if len(exps) != self.n_populations:
                raise ConfigError("exponent tuple length must equal population count")
            if any(e < 0 for e in exps):
                raise ConfigError("exponents must be non-negative")
            if not 0 <= component < self.n_populations:
                raise ConfigError("component index out of range")
            coeff = float(coeff)
            _check_finite("coefficient", coeff)
            cleaned.append((exps, int(component), coeff))
        self.terms = tuple(cleaned)

    @classmethod
    def from_scalar(cls, poly):
        """Lift a 1-population PolynomialRHS into the sparse representation."""
        terms = [((n,), 0, c) for n, c in enumerate(poly.coefficients) if c != 0.0]
        return cls(1, terms or [((0,), 0, 0.0)])

    def eval_component(self, i, rho):
        """Component i of the reaction at densities ``rho`` (shape (N,) or (N, n))."""
        rho = np.asarray(rho, dtype=float)
        acc = None
        for exps, comp, coeff in self.terms:
            if comp != i:
                continue
            term = coeff * np.ones_like(np.asarray(rho[0], dtype=float))
            for k, e in enumerate(exps):
                if e:
                    term = term * np.asarray(rho[k], dtype=float) ** e
            acc = term if acc is None else acc + term
        if acc is None:
            return np.zeros_like(np.asarray(rho[0], dtype=float))
        return acc

    def eval_all(self, rho):
        """Evaluate every component; rho has shape (N,) or (N, n)."""
        return np.array([self.eval_component(i, rho) for i in range(self.n_populations)])


def eval_rhs(poly, rho):
    """Evaluate a PolynomialRHS by Horner's scheme. Works on scalars and arrays."""
    if np.isscalar(rho):
        if not math.isfinite(rho):
            raise ConfigError(f"evaluation point must be finite, got {rho!r}")
        acc = 0.0
        for c in reversed(poly.coefficients):
            acc = acc * rho + c
        return acc
    rho = np.asarray(rho, dtype=float)
    if not np.all(np.isfinite(rho)):
        raise ConfigError("evaluation points must be finite")
    acc = np.zeros_like(rho)
    for c in reversed(poly.coefficients):
        acc = acc * rho + c
    return acc


def real_roots(poly, interval, tol=1e-12, scan_cells=2048):
    """All simple real roots of ``poly`` in ``[lo, hi]``, sorted ascending.

    Sign-change bisection on a uniform scan grid, then Newton polish.
    Roots of even multiplicity produce no sign change and may be missed.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if not lo < hi:
        raise ConfigError(f"interval must satisfy lo < hi, got [{lo}, {hi}]")
    if poly.is_zero:
        raise DegenerateInputError("real_roots rejects the identically-zero polynomial")

    xs = np.linspace(lo, hi, scan_cells + 1)
    vals = eval_rhs(poly, xs)
    deriv = poly.derivative()

    roots = []
    for i in range(scan_cells):
        f_lo, f_hi = vals[i], vals[i + 1]
        if f_lo == 0.0:
            roots.append(xs[i])
            continue
        if f_lo * f_hi < 0.0:
            a, b = xs[i], xs[i + 1]
            fa = f_lo
            while b - a > tol:
                m = 0.5 * (a + b)
                fm = eval_rhs(poly, m)
                if fm == 0.0:
                    a = b = m
                    break
                if fa * fm < 0.0:
                    b = m
                else:
                    a, fa = m, fm
            root = 0.5 * (a + b)
            # Newton polish; keep the bisection result if Newton wanders
            x = root
            for _ in range(8):
                dfx = eval_rhs(deriv, x)
                if dfx == 0.0:
                    break
                step = eval_rhs(poly, x) / dfx
                x -= step
                if abs(step) < 0.25 * tol:
                    break
            if lo <= x <= hi and abs(eval_rhs(poly, x)) <= abs(eval_rhs(poly, root)):
                root = x
            roots.append(root)
    if vals[-1] == 0.0:
        roots.append(xs[-1])

    roots.sort()
    deduped = []
    spacing = max(tol, (hi - lo) / scan_cells * 1e-6)
    for r in roots:
        if not deduped or r - deduped[-1] > spacing:
            deduped.append(r)
    return deduped


def holling2_taylor(a, h, order):
    """Maclaurin coefficients of the type-II response a*rho/(1 + a*h*rho).

    Geometric-series expansion: c0 = 0 and c_n = a * (-a*h)**(n-1) for n >= 1.
    """
    _check_finite("a", float(a))
    _check_finite("h", float(h))
    if order < 1:
        raise ConfigError("order must be >= 1")
    coeffs = [0.0]
    for n in range(1, order + 1):
        coeffs.append(a * (-a * h) ** (n - 1))
    return PolynomialRHS(coeffs)
