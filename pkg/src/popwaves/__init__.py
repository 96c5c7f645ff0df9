"""Exact travelling-wave (kink) solutions of polynomial reaction-diffusion
population models, their coupled three-population analogue, and the
stochastic counterparts: stationary densities, Fokker-Planck evolution,
Langevin ensembles, and mean extinction times."""

from .errors import ConfigError, NumericalError, PopwavesError
from .polynomials import MultiPolynomialRHS, PolynomialRHS, eval_rhs, holling2_taylor, real_roots
from .riccati import RiccatiKernel, make_kernel, phi, phi_deriv
from .waves import (
    DaggeredEquation,
    KinkSolution,
    apply_bc_quadratic,
    balance_exponent,
    build_cubic_kink_constrained,
    build_cubic_kink_free,
    build_quadratic_kink,
    build_quadratic_kink_zero_alpha0,
    collect_sigma,
    eval_kink,
    sigma_nullity,
    wave_residual_numeric,
)
from .newton import fd_jacobian, newton_solve
from .pdesim import Field1D, Grid1D, RDModel, front_position, homogeneous_check, integrate
from .coupled import (
    CoupledKinkSolution,
    LV3Params,
    build_residuals,
    closed_form,
    eval_coupled,
    solve_multistart,
    solve_newton,
)
from . import stochastic

__version__ = "1.0.0"
