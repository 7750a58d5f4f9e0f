"""Exception types shared across the package."""

from __future__ import annotations


class GMShadowError(Exception):
    """Base class for all package errors."""


class DomainError(GMShadowError, ValueError):
    """An argument is outside its mathematical domain."""


class AdmissibilityViolation(DomainError):
    """The exponent set (p, q, r, s) violates the activator-inhibitor
    admissibility condition 0 < (p-1)/r < q/(s+1)."""


class ConfigError(GMShadowError, ValueError):
    """A run configuration file or override is malformed."""


class StepRejected(GMShadowError):
    """A proposed time step exceeds the reaction growth cap; the caller
    must halve dt and retry."""


class InfeasibleSelection(GMShadowError):
    """No (beta, k) pair satisfies the exponent constraints; raised when
    the blowup-regime flag is off or was forced off."""


class BoundViolation(GMShadowError):
    """A checked closed-form bound was violated by simulation output."""


class NumericalBreakdown(GMShadowError):
    """The field became NaN or negative beyond tolerance.

    Carries the partial trajectory (and report, when available) so a
    campaign can record the failure without losing the path's history.
    """

    def __init__(self, message: str, trajectory=None, report=None):
        super().__init__(message)
        self.trajectory = trajectory
        self.report = report
