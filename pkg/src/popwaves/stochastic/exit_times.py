"""Mean first-passage (exit/extinction) times to a lower threshold.

Quadrature route: with W = Psi the mean time from rho0 down to q is

    F(rho0) = int_q^rho0 e^-W(xi) [ (2/b) int_xi^inf e^W(eta) d eta ] d xi,

evaluated with an overflow-safe reference shift, a certified upper
truncation of the inner improper integral, and a cached cumulative so the
nested quadrature stays affordable. Monte Carlo route: Euler-Maruyama
ensemble absorbed at q.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError, DivergenceError, HorizonError
from ..quadrature import CachedCumulative, adaptive_simpson
from .langevin import langevin_ensemble
from .model import log_weight

_LOG_FLOOR = math.log(1e-16)


def _upper_truncation(model, start, max_doublings=60):
    """x beyond which e^W contributes nothing: W has dropped 16 decades
    below its running peak. Works on log-weights, so it never overflows."""
    w_peak = log_weight(model, start)
    x, step = float(start), 1.0
    for _ in range(max_doublings):
        x += step
        w = log_weight(model, x)
        w_peak = max(w_peak, w)
        # compare differences: for huge log-weights, peak + floor would be
        # absorbed into peak and spuriously pass
        if w - w_peak <= _LOG_FLOOR:
            return x
        step *= 2.0
    raise DivergenceError(
        "e^Psi does not decay to the right: drift is not confining, "
        "mean exit time is infinite"
    )


class _ExitTimeMachinery:
    """Shared state for evaluating F at many starting points of one model."""

    def __init__(self, model, q, upper_hint):
        self.model = model
        self.q = float(q)
        self.eta_max = _upper_truncation(model, max(q, upper_hint))
        # overflow-safe reference: peak of W over the working range
        sample = np.linspace(self.q, self.eta_max, 4097)
        self.w_ref = float(np.max(log_weight(model, sample)))
        self._cum = CachedCumulative(
            lambda eta: math.exp(log_weight(model, eta) - self.w_ref), self.eta_max
        )
        # certify the truncation: the next doubling must be negligible
        base = -self._cum(self.q)
        tail = adaptive_simpson(
            self._cum.f,
            self.eta_max,
            2.0 * self.eta_max - self.q,
            rel_tol=1e-8,
            abs_tol=1e-12 * max(base, 1e-300),
        )
        if not tail <= 1e-9 * max(base, 1e-300):
            raise DivergenceError("upper truncation of the inner integral failed to certify")
        self._tail = tail

    def outer_integrand(self, xi):
        w_xi = log_weight(self.model, xi)
        inner = -self._cum(xi) + self._tail
        if inner > 1e-250 and (self.w_ref - w_xi) + math.log(inner) < 700.0:
            return (2.0 / self.model.noise) * math.exp(
                self.w_ref - w_xi + math.log(inner)
            )
        # The shifted inner integral underflowed: the global reference W peak
        # lies far above everything right of xi. Redo the inner integral with
        # a local reference (the running max of W over [xi, eta_max]).
        sample = np.linspace(xi, self.eta_max, 1025)
        w_loc = float(np.max(log_weight(self.model, sample)))
        inner_loc = adaptive_simpson(
            lambda eta: math.exp(log_weight(self.model, eta) - w_loc),
            xi,
            self.eta_max,
            rel_tol=1e-8,
        )
        if inner_loc <= 0.0:
            return 0.0
        log_g = math.log(2.0 / self.model.noise) + (w_loc - w_xi) + math.log(inner_loc)
        if log_g > 700.0:
            raise DivergenceError(
                "mean exit time integrand exceeds floating-point range "
                "(escape over this barrier is effectively impossible)"
            )
        return math.exp(log_g)

    def segment(self, lo, hi, rel_tol):
        return adaptive_simpson(self.outer_integrand, lo, hi, rel_tol=rel_tol)


def exit_time(model, q, rho0, rel_tol=1e-8):
    """Mean time for a path started at rho0 to first reach the threshold q."""
    q, rho0 = float(q), float(rho0)
    if rho0 < q:
        raise ConfigError(f"starting point rho0 = {rho0} must be >= threshold q = {q}")
    if rho0 == q:
        return 0.0
    mach = _ExitTimeMachinery(model, q, rho0)
    return mach.segment(q, rho0, rel_tol)


def exit_time_curve(model, q, rho0s, rel_tol=1e-8):
    """exit_time at many starting points, reusing one set of machinery.

    Computed by segment additivity along the sorted starting points, so the
    cost grows with the span, not with the number of points squared.
    """
    rho0s = np.asarray(rho0s, dtype=float)
    if rho0s.size == 0:
        return np.array([])
    if np.any(rho0s < q):
        raise ConfigError("all starting points must be >= threshold q")
    order = np.argsort(rho0s)
    mach = _ExitTimeMachinery(model, q, float(np.max(rho0s)))
    out = np.empty_like(rho0s)
    prev_x, prev_f = float(q), 0.0
    for i in order:
        x = float(rho0s[i])
        prev_f = prev_f + mach.segment(prev_x, x, rel_tol)
        prev_x = x
        out[i] = prev_f
    return out


@dataclass
class MCExitResult:
    mean: float
    stderr: float
    n_absorbed: int
    n_paths: int


def mc_exit_time(model, q, rho0, dt, n_paths, t_max, seed=0):
    """Monte Carlo mean exit time: Euler-Maruyama paths absorbed at q.

    Raises HorizonError when more than 1% of paths outlive ``t_max`` (the
    estimate would be biased low).
    """
    res = langevin_ensemble(model, rho0, dt, t_max, n_paths, seed=seed, absorb_at=q)
    times = res.absorption_times[res.absorbed]
    frac_alive = 1.0 - times.size / n_paths
    if frac_alive > 0.01:
        raise HorizonError(
            f"{100.0 * frac_alive:.1f}% of paths were still unabsorbed at "
            f"t_max = {t_max}; raise the horizon"
        )
    mean = float(np.mean(times))
    stderr = float(np.std(times, ddof=1) / np.sqrt(times.size)) if times.size > 1 else float("nan")
    return MCExitResult(mean=mean, stderr=stderr, n_absorbed=int(times.size), n_paths=int(n_paths))
