"""The Riccati simplest-equation kernel and its tanh kink profile.

dPhi/dxi = a*Phi^2 + b*Phi + c with discriminant theta^2 = b^2 - 4ac > 0 has
the hyperbolic solution

    Phi(xi) = -b/(2a) - (theta/(2a)) * tanh(theta*(xi + xi0)/2).

theta is stored as the positive root; the sign freedom is equivalent to a
xi-reflection combined with swapping the two asymptotes, so a single branch
covers all kinks.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DegenerateInputError, NonHyperbolicError


@dataclass(frozen=True)
class RiccatiKernel:
    a: float
    b: float
    c: float
    xi0: float
    theta: float

    @property
    def asymptote_plus(self):
        """Limit of Phi as xi -> +inf (tanh -> +1)."""
        return (-self.b - self.theta) / (2.0 * self.a)

    @property
    def asymptote_minus(self):
        """Limit of Phi as xi -> -inf (tanh -> -1)."""
        return (-self.b + self.theta) / (2.0 * self.a)

    @property
    def midpoint_value(self):
        """Phi at xi = -xi0, where tanh vanishes."""
        return -self.b / (2.0 * self.a)


def make_kernel(a, b, c, xi0=0.0):
    a, b, c, xi0 = float(a), float(b), float(c), float(xi0)
    for name, val in (("a", a), ("b", b), ("c", c), ("xi0", xi0)):
        if not math.isfinite(val):
            raise ConfigError(f"kernel parameter {name} must be finite")
    if a == 0.0:
        raise DegenerateInputError("Riccati kernel needs a != 0")
    disc = b * b - 4.0 * a * c
    if disc <= 0.0:
        raise NonHyperbolicError(
            f"discriminant b^2-4ac = {disc} is not positive: no real tanh kink"
        )
    return RiccatiKernel(a=a, b=b, c=c, xi0=xi0, theta=math.sqrt(disc))


def phi(kernel, xi):
    """The tanh profile. Accepts scalars or arrays; saturates for large |xi|."""
    arg = 0.5 * kernel.theta * (np.asarray(xi, dtype=float) + kernel.xi0)
    val = -kernel.b / (2.0 * kernel.a) - kernel.theta / (2.0 * kernel.a) * np.tanh(arg)
    if np.isscalar(xi):
        return float(val)
    return val


def phi_deriv(kernel, xi):
    """Analytic dPhi/dxi = -(theta^2/(4a)) * sech^2(theta*(xi+xi0)/2)."""
    arg = 0.5 * kernel.theta * (np.asarray(xi, dtype=float) + kernel.xi0)
    val = -(kernel.theta ** 2) / (4.0 * kernel.a) / np.cosh(arg) ** 2
    if np.isscalar(xi):
        return float(val)
    return val
