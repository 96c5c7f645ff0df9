"""Stationary Fokker-Planck densities on a uniform grid.

Three boundary regimes are covered:

* full line: p proportional to e^Psi (needs a confining drift);
* absorbing origin: p = K e^Psi(rho) int_0^rho e^-Psi, on [0, rho_max];
* pinned value at the origin: p = e^Psi [A - kappa int_0^rho e^-Psi],
  with kappa fixed by unit mass and A by the pinned value p(0). A = 0
  recovers the absorbing case and kappa = 0 the zero-flux case.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError, NonNormalizableError, TruncationError
from ..pdesim import Grid1D
from .model import log_weight

_GAUSS5_NODES = np.array(
    [-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640]
)
_GAUSS5_WEIGHTS = np.array(
    [0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665, 0.2369268850561891]
)


@dataclass(frozen=True)
class DensityOnGrid:
    """A normalized probability density sampled on a uniform grid.

    ``tail_ratio`` reports max(p at either endpoint) / max(p); a large value
    means the grid truncates real probability mass.
    """

    grid: Grid1D
    values: np.ndarray
    tail_ratio: float

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.grid.n,):
            raise ConfigError("density values must match the grid size")
        object.__setattr__(self, "values", v)

    @property
    def mass(self):
        return float(np.trapezoid(self.values, dx=self.grid.dx))

    # the trapezoid normalization constant; alias kept for callers that think
    # of it as "the" normalization rather than a mass
    normalization = mass


def _cell_cumulative(f, x):
    """Cumulative integral of ``f`` along grid ``x``: 5-point Gauss per cell."""
    out = np.zeros_like(x)
    half = 0.5 * np.diff(x)
    mid = 0.5 * (x[:-1] + x[1:])
    pts = mid[:, None] + half[:, None] * _GAUSS5_NODES[None, :]
    cell = half * (f(pts) @ _GAUSS5_WEIGHTS)
    out[1:] = np.cumsum(cell)
    return out


def _finalize(grid, unnormalized, tail_tol, right_only=False):
    peak = float(np.max(unnormalized))
    if not np.isfinite(peak) or peak <= 0.0:
        raise NonNormalizableError("stationary density has no positive mass on this grid")
    ends = unnormalized[-1] if right_only else max(unnormalized[0], unnormalized[-1])
    tail = float(ends / peak)
    if tail > tail_tol:
        raise TruncationError(
            f"unnormalized density at a grid endpoint is {tail:.2e} of the peak "
            f"(tolerance {tail_tol:.0e}); extend the grid"
        )
    mass = np.trapezoid(unnormalized, dx=grid.dx)
    return DensityOnGrid(grid=grid, values=unnormalized / mass, tail_ratio=tail)


def stationary_pdf_full_line(model, grid, tail_tol=1e-10):
    """Zero-flux stationary density p proportional to e^Psi on the grid."""
    if not model.confining:
        raise NonNormalizableError(
            "e^Psi is not integrable on the line: drift needs odd degree "
            "with a negative leading coefficient"
        )
    psi = log_weight(model, grid.x)
    un = np.exp(psi - np.max(psi))
    return _finalize(grid, un, tail_tol)


def stationary_pdf_absorbing_origin(model, grid, tail_tol=0.05):
    """Stationary density with an absorbing-type boundary at rho = 0.

    p(rho) = K e^Psi(rho) int_0^rho e^-Psi(s) ds on a grid starting at 0.
    The shift in Psi cancels between the exponential and the integral, so
    the evaluation is overflow-safe for any shift of the log-weight.

    This solution carries a constant probability flux, so its upper tail
    decays only algebraically (like 1 / |drift|); the default truncation
    tolerance is accordingly loose, and ``tail_ratio`` on the result says
    how much of the peak the endpoint still holds.
    """
    x = grid.x
    if abs(x[0]) > 1e-12:
        raise ConfigError("absorbing-origin density needs a grid starting at 0")
    psi = log_weight(model, x)
    shift = np.max(psi)
    inner = _cell_cumulative(lambda s: np.exp(-(log_weight(model, s) - shift)), x)
    un = np.exp(psi - shift) * inner
    return _finalize(grid, un, tail_tol)


def stationary_pdf_pinned(model, grid, p_origin, tail_tol=0.05):
    """Stationary density with the value at rho = 0 pinned to ``p_origin``.

    General two-constant stationary solution p = e^Psi [A - kappa I0(rho)]
    with I0(rho) = int_0^rho e^-Psi. Psi(0) = 0, so A = p(0) directly, and
    kappa follows from unit mass. Raises NonNormalizableError if the
    resulting function dips negative on the grid (no such stationary density
    exists with that pinned value).
    """
    p_origin = float(p_origin)
    if p_origin < 0.0:
        raise ConfigError("pinned density value must be non-negative")
    x = grid.x
    if abs(x[0]) > 1e-12:
        raise ConfigError("pinned-origin density needs a grid starting at 0")
    psi = log_weight(model, x)
    if np.max(np.abs(psi)) > 300.0:
        raise ConfigError("log-weight magnitude too large for direct evaluation")
    E = np.exp(psi)
    I0 = _cell_cumulative(lambda s: np.exp(-log_weight(model, s)), x)
    J1 = np.trapezoid(E, dx=grid.dx)
    J2 = np.trapezoid(E * I0, dx=grid.dx)
    if J2 <= 0.0:
        raise NonNormalizableError("degenerate grid: cumulative weight never grows")
    kappa = (p_origin * J1 - 1.0) / J2
    p = E * (p_origin - kappa * I0)
    peak = float(np.max(np.abs(p)))
    if float(np.min(p)) < -1e-10 * peak:
        raise NonNormalizableError(
            f"no non-negative stationary density with p(0) = {p_origin} on this grid"
        )
    # the value at rho = 0 is pinned by construction; only the upper end
    # can signal truncation
    return _finalize(grid, np.clip(p, 0.0, None), tail_tol, right_only=True)


def pdf_extrema(density, min_height=1e-9):
    """Interior extrema of a gridded density, parabolically refined.

    Returns a list of (x, value, kind) with kind "max" or "min", ordered by
    position. A node is an extremum when the discrete slope changes sign
    across it; the location is then refined by the vertex of the parabola
    through the node and its neighbours. Nodes where the density has decayed
    below ``min_height`` of its peak are skipped (the flat tails carry no
    meaningful sign structure).
    """
    x = density.grid.x
    p = density.values
    dx = density.grid.dx
    d = np.diff(p)
    floor = min_height * float(np.max(p))
    out = []
    for i in range(1, len(p) - 1):
        if p[i] <= floor:
            continue
        left, right = d[i - 1], d[i]
        if left == 0.0 and right == 0.0:
            continue
        if left > 0.0 >= right or (left == 0.0 and right < 0.0):
            kind = "max"
        elif left < 0.0 <= right or (left == 0.0 and right > 0.0):
            kind = "min"
        else:
            continue
        denom = p[i - 1] - 2.0 * p[i] + p[i + 1]
        if denom != 0.0:
            offset = 0.5 * dx * (p[i - 1] - p[i + 1]) / denom
            offset = float(np.clip(offset, -dx, dx))
        else:
            offset = 0.0
        xv = float(x[i] + offset)
        val = float(p[i] - 0.25 * (p[i - 1] - p[i + 1]) * offset / dx)
        out.append((xv, val, kind))
    return out
