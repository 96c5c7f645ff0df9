"""Exception hierarchy.

Two top-level families matter for the CLI / service exit-code contract:
``ConfigError`` (bad inputs, exit code 2) and ``NumericalError``
(a computation that was set up correctly but failed, exit code 3).
"""


class PopwavesError(Exception):
    """Base class for all library errors."""


class ConfigError(PopwavesError):
    """Invalid input: bad parameters, degenerate models, violated preconditions."""


class NumericalError(PopwavesError):
    """A numerical procedure failed: divergence, non-convergence, blow-up."""


class DegenerateInputError(ConfigError):
    """Degenerate model input (zero polynomial, a=0 Riccati kernel, ...)."""


class NonHyperbolicError(ConfigError):
    """Riccati discriminant b^2 - 4ac <= 0: no real tanh kink exists."""


class NoBalanceError(ConfigError):
    """The power-balance condition P(L-1) = 2 has no integer solution."""


class ParameterError(ConfigError):
    """A closed-form construction hit a zero denominator or excluded value."""


class BranchError(ConfigError):
    """A square-root branch requires a sign condition that does not hold."""


class StabilityError(ConfigError):
    """Explicit time step violates the advertised stability bound."""


class TruncationError(ConfigError):
    """Grid does not extend far enough to hold the requested density."""


class NonNormalizableError(ConfigError):
    """Requested stationary density is not normalizable for this drift."""


class SupportError(ConfigError):
    """Reference density vanishes where the compared density does not."""


class FrontNotFoundError(NumericalError):
    """Field does not cross the requested level exactly once."""


class BlowUpError(NumericalError):
    """Simulation state became non-finite."""

    def __init__(self, message, time=None):
        super().__init__(message)
        self.time = time


class SingularJacobianError(NumericalError):
    """Newton linear solve failed: Jacobian singular or rank-deficient."""


class NonConvergenceError(NumericalError):
    """Iteration budget exhausted before reaching the requested tolerance."""

    def __init__(self, message, residual_norm=None):
        super().__init__(message)
        self.residual_norm = residual_norm


class DivergenceError(NumericalError):
    """An improper integral failed to converge under truncation doubling."""


class ConservationError(NumericalError):
    """Conservative scheme lost more mass than the advertised bound."""


class HorizonError(NumericalError):
    """Too many Monte Carlo paths were still unabsorbed at the horizon."""
