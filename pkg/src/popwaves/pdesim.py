"""1-D method-of-lines simulator for reaction-diffusion(-transport) systems.

Space: second-order central differences for both the Laplacian and any
first-order transport terms. Time: classical RK4 with a fixed step.
The explicit stability bound is enforced up front and violating it is a
configuration error, never a silent clamp.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import BlowUpError, ConfigError, StabilityError
from .polynomials import MultiPolynomialRHS


@dataclass(frozen=True)
class Grid1D:
    x_min: float
    x_max: float
    n: int

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ConfigError("grid needs x_min < x_max")
        if self.n < 16:
            raise ConfigError("grid needs n >= 16")

    @property
    def dx(self):
        return (self.x_max - self.x_min) / (self.n - 1)

    @property
    def x(self):
        return np.linspace(self.x_min, self.x_max, self.n)


@dataclass
class Field1D:
    grid: Grid1D
    components: np.ndarray  # shape (N, n)
    time: float = 0.0

    def __post_init__(self):
        self.components = np.atleast_2d(np.asarray(self.components, dtype=float))
        if self.components.shape[1] != self.grid.n:
            raise ConfigError("component arrays must match the grid size")
        if not np.all(np.isfinite(self.components)):
            raise ConfigError("field values must be finite")


@dataclass(frozen=True)
class RDModel:
    """Diffusion matrix, polynomial reaction, optional first-order transport.

    Semi-discrete form: du_i/dt = sum_k D_ik u_k'' + sum_k T_ik u_k' + R_i(u).
    """

    diffusion: np.ndarray
    reaction: MultiPolynomialRHS
    transport: np.ndarray = None

    def __post_init__(self):
        N = self.reaction.n_populations
        D = np.atleast_2d(np.asarray(self.diffusion, dtype=float))
        if D.shape != (N, N):
            raise ConfigError("diffusion matrix shape must be (N, N)")
        object.__setattr__(self, "diffusion", D)
        if self.transport is not None:
            T = np.atleast_2d(np.asarray(self.transport, dtype=float))
            if T.shape != (N, N):
                raise ConfigError("transport matrix shape must be (N, N)")
            object.__setattr__(self, "transport", T)

    @property
    def n_populations(self):
        return self.reaction.n_populations


def _spectral_bound(M):
    if M is None:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvals(M))))


def check_stability(model, grid, dt):
    dx = grid.dx
    lam_d = _spectral_bound(model.diffusion)
    if lam_d > 0.0 and dt > 0.4 * dx * dx / lam_d:
        raise StabilityError(
            f"dt = {dt} exceeds diffusion bound 0.4*dx^2/|D| = {0.4 * dx * dx / lam_d}"
        )
    lam_t = _spectral_bound(model.transport)
    if lam_t > 0.0 and dt > dx / lam_t:
        raise StabilityError(
            f"dt = {dt} exceeds advective bound dx/|T| = {dx / lam_t}"
        )


def _rhs(model, grid, u, bc, bc_values):
    dx = grid.dx
    N, n = u.shape
    # pad per boundary condition; fixed-value pads with the held values
    if bc == "zero-gradient":
        up = np.concatenate([u[:, 1:2], u, u[:, -2:-1]], axis=1)
    else:
        up = np.concatenate([bc_values[:, :1], u, bc_values[:, 1:]], axis=1)
    d2 = (up[:, 2:] - 2.0 * u + up[:, :-2]) / (dx * dx)
    out = model.diffusion @ d2
    if model.transport is not None:
        d1 = (up[:, 2:] - up[:, :-2]) / (2.0 * dx)
        out += model.transport @ d1
    out += model.reaction.eval_all(u)
    if bc == "fixed-value":
        out[:, 0] = 0.0
        out[:, -1] = 0.0
    return out


def integrate(model, f, t_end, dt, bc="fixed-value", bc_values=None):
    """Advance ``f`` to ``t_end`` by RK4; returns a new Field1D.

    ``bc`` is "fixed-value" (endpoints held, default at their initial values)
    or "zero-gradient". Blow-up raises with the time of failure.
    """
    if dt <= 0.0:
        raise ConfigError("dt must be positive")
    if bc not in ("fixed-value", "zero-gradient"):
        raise ConfigError(f"unknown boundary condition {bc!r}")
    check_stability(model, f.grid, dt)

    u = f.components.copy()
    if bc == "fixed-value":
        if bc_values is None:
            bc_values = np.stack([u[:, 0], u[:, -1]], axis=1)
        else:
            bc_values = np.asarray(bc_values, dtype=float).reshape(u.shape[0], 2)
    t = f.time
    while t < t_end - 1e-14 * max(1.0, abs(t_end)):
        step = min(dt, t_end - t)
        k1 = _rhs(model, f.grid, u, bc, bc_values)
        k2 = _rhs(model, f.grid, u + 0.5 * step * k1, bc, bc_values)
        k3 = _rhs(model, f.grid, u + 0.5 * step * k2, bc, bc_values)
        k4 = _rhs(model, f.grid, u + step * k3, bc, bc_values)
        u = u + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t += step
        if not np.all(np.isfinite(u)):
            raise BlowUpError(f"solution became non-finite at t = {t}", time=t)
    return Field1D(grid=f.grid, components=u, time=t)


def front_position(f, component, level):
    """Linear-interpolated location where the component crosses ``level``.

    The component must cross the level exactly once (monotone front).
    """
    from .errors import FrontNotFoundError

    u = f.components[component]
    d = u - level
    sign_change = np.nonzero(d[:-1] * d[1:] < 0.0)[0]
    exact = np.nonzero(d == 0.0)[0]
    total = len(sign_change) + len(exact)
    if total != 1:
        raise FrontNotFoundError(
            f"expected exactly one crossing of level {level}, found {total}"
        )
    x = f.grid.x
    if len(exact):
        return float(x[exact[0]])
    i = sign_change[0]
    frac = d[i] / (d[i] - d[i + 1])
    return float(x[i] + frac * (x[i + 1] - x[i]))


def homogeneous_check(model, rho0, t_end, dt, grid=None):
    """Max deviation between a constant-in-space PDE run and the plain ODE.

    Both are advanced with the same RK4 arithmetic, so on constant fields the
    only possible differences come from the (identically zero) spatial terms.
    """
    rho0 = np.atleast_1d(np.asarray(rho0, dtype=float))
    if grid is None:
        grid = Grid1D(0.0, 1.0, 16)
    f = Field1D(grid=grid, components=np.repeat(rho0[:, None], grid.n, axis=1))
    out = integrate(model, f, t_end, dt, bc="zero-gradient")

    y = rho0.copy()
    t = 0.0
    while t < t_end - 1e-14 * max(1.0, abs(t_end)):
        step = min(dt, t_end - t)
        k1 = model.reaction.eval_all(y)
        k2 = model.reaction.eval_all(y + 0.5 * step * k1)
        k3 = model.reaction.eval_all(y + 0.5 * step * k2)
        k4 = model.reaction.eval_all(y + step * k3)
        y = y + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t += step
    return float(np.max(np.abs(out.components - y[:, None])))
