"""Scalar drift-diffusion model: polynomial drift X and noise intensity b."""

import math
from dataclasses import dataclass

from ..errors import ConfigError
from ..polynomials import PolynomialRHS, eval_rhs


@dataclass(frozen=True)
class DiffusionModel1D:
    """dx = X(x) dt + sqrt(b) dW with X a polynomial drift."""

    drift: PolynomialRHS
    noise: float

    def __post_init__(self):
        if not (math.isfinite(self.noise) and self.noise > 0.0):
            raise ConfigError(f"noise intensity b must be positive, got {self.noise}")

    @property
    def confining(self):
        """Whether exp of the log-weight is integrable over the whole line:
        odd leading degree with negative leading coefficient."""
        L = self.drift.degree
        return L % 2 == 1 and self.drift.coefficients[L] < 0.0


def potential(model, x):
    """V(x) = -int_0^x X(z) dz, in closed form (V(0) = 0)."""
    return -eval_rhs(model.drift.antiderivative(), x)


def log_weight(model, x):
    """Psi(x) = -(2/b) V(x); the stationary density is proportional to e^Psi."""
    return -(2.0 / model.noise) * potential(model, x)
