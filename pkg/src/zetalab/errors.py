"""Exception and warning types shared across the package.

The hierarchy distinguishes *domain* failures (the caller asked for a value
outside the region where the algorithm is defined) from *budget* failures
(the algorithm is defined but did not reach the requested accuracy within
its evaluation allowance).  Command-line entry points map the two groups to
different exit codes, so new exception types should subclass one of
:class:`DomainError` or :class:`NumericalBudgetError` rather than
:class:`ZetalabError` directly.
"""

from __future__ import annotations


class ZetalabError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ZetalabError, ValueError):
    """The requested evaluation point lies outside the supported domain."""


class PoleError(DomainError):
    """Evaluation was requested at (or numerically on top of) a pole."""


class PrefactorSingular(DomainError):
    """A conversion prefactor is too close to zero to divide by safely."""


class MarginError(DomainError):
    """A finite-difference stencil would step outside the valid region."""


class LogDivergence(DomainError):
    """The requested integral diverges logarithmically at an endpoint."""


class GridTooSmall(DomainError):
    """A grid operation needs more interior points than the grid provides."""


class BoundaryViolation(DomainError):
    """Field values on the truncation boundary are too large to ignore."""


class DegenerateLadder(DomainError):
    """An order estimate was requested from an unusable refinement ladder."""


class NumericalBudgetError(ZetalabError, RuntimeError):
    """Requested accuracy was not reached within the evaluation budget.

    Instances may carry a ``partial`` attribute holding the best result
    obtained before giving up (or ``None`` when nothing useful exists).
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class BudgetExceeded(NumericalBudgetError):
    """The evaluation-count ceiling was hit before convergence."""


class SlowDecay(NumericalBudgetError):
    """A semi-infinite integrand failed to decay within the scanned range."""


class SlowConvergence(NumericalBudgetError):
    """A series kept contributing above tolerance past its term allowance."""


class WindowTooWide(NumericalBudgetError):
    """A root-scan window extends beyond the validated search range."""


class NonFiniteSample(ZetalabError, ArithmeticError):
    """An integrand or field sample came back NaN or infinite."""


class TruncationWarning(UserWarning):
    """A truncated domain may contribute more than the requested tolerance."""


class NonDecayingTrend(UserWarning):
    """A cut-ladder overlap failed to decay over the scanned domain sizes.

    Reported, not fatal: growth over small cuts may only mean that the
    integrand's bulk lies beyond the largest cut tried, so the caller gets
    the trend itself and decides.
    """
