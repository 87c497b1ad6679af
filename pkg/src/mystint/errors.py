"""Shared exception types.

Every numerical routine in this package distinguishes four failure modes:
bad mathematical input (DomainError), input too close to a singularity of
the function being evaluated (PoleProximityError), a series that did not
meet its tolerance within the permitted number of terms (ConvergenceError),
and a quadrature that ran out of refinement levels (AccuracyError, which
carries the best estimate so callers can decide whether it is usable).
"""

from __future__ import annotations


class DomainError(ValueError):
    """Input outside the mathematical domain of the operation."""


class PoleProximityError(DomainError):
    """Evaluation point too close to a pole or a zero crossing.

    The message names the offending singularity.
    """


class ConvergenceError(RuntimeError):
    """A series or iteration failed to converge within its term budget."""


class AccuracyError(RuntimeError):
    """Quadrature failed to reach the requested tolerance.

    Attributes
    ----------
    best_estimate : the value at the finest level reached
    error_estimate : the last observed inter-level difference
    """

    def __init__(self, message: str, best_estimate: complex, error_estimate: float):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate


class ConfigError(ValueError):
    """Invalid run configuration (bad key, bad value, bad file)."""
