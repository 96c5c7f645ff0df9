"""Adaptive Simpson quadrature with support for truncated improper integrals."""

import math

from .errors import DivergenceError, NumericalError


def adaptive_simpson(f, a, b, rel_tol=1e-8, abs_tol=0.0, max_depth=50):
    """Adaptive Simpson on [a, b] with the standard (S2 - S)/15 error estimate."""
    if a == b:
        return 0.0
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    tol = max(abs_tol, rel_tol * abs(whole), 1e-300)
    return _simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth)


def _simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    err = left + right - whole
    if depth <= 0:
        raise NumericalError("adaptive Simpson hit maximum recursion depth")
    if abs(err) <= 15.0 * tol:
        return left + right + err / 15.0
    return _simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + _simpson_rec(
        f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1
    )


def truncated_upper_limit(f, start, floor_ratio=1e-16, step0=1.0, max_doublings=60):
    """Find T >= start where |f| has fallen below floor_ratio of its running peak.

    Marches right with doubling steps; raises DivergenceError if the
    integrand never decays.
    """
    peak = abs(f(start))
    x = start
    step = step0
    for _ in range(max_doublings):
        x_next = x + step
        v = abs(f(x_next))
        peak = max(peak, v)
        if v <= floor_ratio * max(peak, 1e-300):
            return x_next
        x = x_next
        step *= 2.0
    raise DivergenceError(
        f"integrand did not decay below {floor_ratio} of its peak after "
        f"{max_doublings} doublings from {start}"
    )


def improper_integral(f, a, rel_tol=1e-8, floor_ratio=1e-16, step0=1.0):
    """int_a^inf f, via truncation at the decay point then doubling until the
    value changes by less than rel_tol relatively."""
    T = truncated_upper_limit(f, a, floor_ratio=floor_ratio, step0=step0)
    val = adaptive_simpson(f, a, T, rel_tol=rel_tol)
    for _ in range(10):
        T2 = a + 2.0 * (T - a)
        val2 = val + adaptive_simpson(f, T, T2, rel_tol=rel_tol, abs_tol=rel_tol * abs(val))
        if abs(val2 - val) <= 1e-9 * max(abs(val2), 1e-300):
            return val2
        val, T = val2, T2
    raise DivergenceError("improper integral did not stabilize under truncation doubling")


class CachedCumulative:
    """Monotone antiderivative evaluations with reuse of earlier work.

    Serves queries J(x) = int_{ref}^{x} f for arbitrary x by integrating only
    from the nearest previously evaluated point. Keeps adaptive-Simpson
    accuracy while making nested quadrature affordable.
    """

    def __init__(self, f, ref, rel_tol=1e-10):
        self.f = f
        self.rel_tol = rel_tol
        self._xs = [float(ref)]
        self._vals = [0.0]

    def __call__(self, x):
        x = float(x)
        import bisect

        i = bisect.bisect_left(self._xs, x)
        if i < len(self._xs) and self._xs[i] == x:
            return self._vals[i]
        # nearest existing node
        candidates = []
        if i > 0:
            candidates.append(i - 1)
        if i < len(self._xs):
            candidates.append(i)
        j = min(candidates, key=lambda k: abs(self._xs[k] - x))
        x0, v0 = self._xs[j], self._vals[j]
        inc = adaptive_simpson(self.f, x0, x, rel_tol=self.rel_tol)
        val = v0 + inc
        self._xs.insert(i, x)
        self._vals.insert(i, val)
        return val
