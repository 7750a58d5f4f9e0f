"""Simulator and verification harness for the stochastic shadow
Gierer-Meinhardt system: pathwise integration of the coupled radial
PDE/SDE, finite-time blowup detection, and empirical checks of the
closed-form blowup-time, stopping-time, and Brownian-tail bounds."""

from .brownian import BrownianPath, sample_path, tail_bound
from .errors import (
    AdmissibilityViolation,
    BoundViolation,
    ConfigError,
    DomainError,
    GMShadowError,
    InfeasibleSelection,
    NumericalBreakdown,
    StepRejected,
)
from .model import (
    Parameters,
    RadialGrid,
    initial_profile,
    mean_power,
    u_from_v,
    v_from_u,
    validate,
)
from .solver import BlowupReport, RadialState, SolverControls, Trajectory, run, step

__all__ = [
    "AdmissibilityViolation",
    "BlowupReport",
    "BoundViolation",
    "BrownianPath",
    "ConfigError",
    "DomainError",
    "GMShadowError",
    "InfeasibleSelection",
    "NumericalBreakdown",
    "Parameters",
    "RadialGrid",
    "RadialState",
    "SolverControls",
    "StepRejected",
    "Trajectory",
    "initial_profile",
    "mean_power",
    "run",
    "sample_path",
    "step",
    "tail_bound",
    "u_from_v",
    "v_from_u",
    "validate",
]

__version__ = "0.1.0"
