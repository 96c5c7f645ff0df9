"""Stochastic population dynamics: stationary densities, Fokker-Planck
evolution, Langevin ensembles, and mean exit times."""

from .exit_times import MCExitResult, exit_time, exit_time_curve, mc_exit_time
from .fokker_planck import FPResult, fp_evolve, lyapunov_H
from .langevin import LangevinResult, ensemble_density, langevin_ensemble, step_normals
from .model import DiffusionModel1D, log_weight, potential
from .stationary import (
    DensityOnGrid,
    pdf_extrema,
    stationary_pdf_absorbing_origin,
    stationary_pdf_full_line,
    stationary_pdf_pinned,
)

__all__ = [
    "DiffusionModel1D",
    "potential",
    "log_weight",
    "DensityOnGrid",
    "stationary_pdf_full_line",
    "stationary_pdf_absorbing_origin",
    "stationary_pdf_pinned",
    "pdf_extrema",
    "FPResult",
    "fp_evolve",
    "lyapunov_H",
    "LangevinResult",
    "langevin_ensemble",
    "ensemble_density",
    "step_normals",
    "exit_time",
    "exit_time_curve",
    "mc_exit_time",
    "MCExitResult",
]
