"""Spectra, exceptional points and nonadiabatic sweep dynamics of PT-symmetric
lossy two-level systems."""

from .model import (
    EtaSchedule,
    ModelParams,
    SymmetryReport,
    build_hamiltonian,
    classify_symmetry,
    eval_schedule,
)
from .spectra import (
    BubbleReport,
    EigenSystem,
    bubble_size_scan,
    eigensystem,
    find_bubble,
    pt_phase,
    spin_expectations,
)
from .dynamics import (
    Trajectory,
    TwoLevelState,
    WeberSolution,
    analytic_solution,
    cyclic_experiment,
    initial_state_scan,
    loss_normalization,
    projection_coefficients,
    propagate,
)
from .asymptotics import (
    predicted_ratio,
    regime_classify_dx,
    tanh_identity,
    weber_constants,
)
from .perturbation import (
    PerturbationSetup,
    bubble_prediction,
    degenerate_block,
    perturbative_corrections,
)

__version__ = "0.1.0"

__all__ = [
    "EtaSchedule",
    "ModelParams",
    "SymmetryReport",
    "build_hamiltonian",
    "classify_symmetry",
    "eval_schedule",
    "BubbleReport",
    "EigenSystem",
    "bubble_size_scan",
    "eigensystem",
    "find_bubble",
    "pt_phase",
    "spin_expectations",
    "Trajectory",
    "TwoLevelState",
    "WeberSolution",
    "analytic_solution",
    "cyclic_experiment",
    "initial_state_scan",
    "loss_normalization",
    "projection_coefficients",
    "propagate",
    "predicted_ratio",
    "regime_classify_dx",
    "tanh_identity",
    "weber_constants",
    "PerturbationSetup",
    "bubble_prediction",
    "degenerate_block",
    "perturbative_corrections",
]
