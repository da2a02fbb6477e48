"""Shared value types for the numerical layer."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..errors import DegenerateLadder, DomainError


@dataclass(frozen=True)
class ToleranceSpec:
    """Accuracy request for an adaptive computation.

    A result ``v`` with error estimate ``e`` is accepted once
    ``e <= max(abs_tol, rel_tol * |v|)``.  ``max_evaluations`` caps the
    total number of integrand (or term) evaluations for one call.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_evaluations: int = 2_000_000

    def __post_init__(self):
        if not (self.rel_tol > 0 and math.isfinite(self.rel_tol)):
            raise DomainError(f"rel_tol must be positive and finite, got {self.rel_tol}")
        if not (self.abs_tol > 0 and math.isfinite(self.abs_tol)):
            raise DomainError(f"abs_tol must be positive and finite, got {self.abs_tol}")
        if self.max_evaluations < 15:
            raise DomainError("max_evaluations must allow at least one quadrature panel")

    def target(self, magnitude: float) -> float:
        """Effective tolerance for a value of the given magnitude."""
        return max(self.abs_tol, self.rel_tol * magnitude)

    def scaled(self, rel: float = 1.0, absolute: float = 1.0) -> "ToleranceSpec":
        """A copy with both tolerances multiplied by the given factors."""
        return ToleranceSpec(self.rel_tol * rel, self.abs_tol * absolute, self.max_evaluations)


#: Default request for smooth integrands.
SMOOTH_DEFAULT = ToleranceSpec(rel_tol=1e-10, abs_tol=1e-12)

#: Default request for oscillatory integrands, which cost far more per digit.
OSCILLATORY_DEFAULT = ToleranceSpec(rel_tol=1e-7, abs_tol=1e-12)


@dataclass(frozen=True)
class QuadratureResult:
    """Value of an integral together with its accuracy bookkeeping."""

    value: complex
    abs_error_estimate: float
    evaluations: int
    converged: bool

    def __post_init__(self):
        v = complex(self.value)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise DomainError("quadrature produced a non-finite value")
        if not (self.abs_error_estimate >= 0 and math.isfinite(self.abs_error_estimate)):
            raise DomainError("error estimate must be finite and non-negative")
        if self.evaluations < 0:
            raise DomainError("evaluation count cannot be negative")


@dataclass(frozen=True)
class ResidualReport:
    """Residuals of a check across a refinement ladder.

    ``spacings`` lists the ladder steps from coarse to fine (strictly
    decreasing); ``residual_norms`` the matching residual magnitudes.
    ``estimated_order`` is the least-squares slope of log(residual) against
    log(spacing), or ``None`` when the residuals sit at machine level and no
    meaningful slope exists (then ``exact_match`` is set).  When the check
    was produced from noisy samples, ``noise_floor`` records the predicted
    floor and ``floor_limited`` marks ladders whose finest rungs already sit
    in the noise.
    """

    spacings: tuple[float, ...]
    residual_norms: tuple[float, ...]
    estimated_order: float | None
    noise_floor: float | None = None
    floor_limited: bool = False
    exact_match: bool = False

    def __post_init__(self):
        if len(self.spacings) != len(self.residual_norms):
            raise DegenerateLadder("spacings and residual norms must pair up")
        if len(self.spacings) < 2:
            raise DegenerateLadder("a residual ladder needs at least two rungs")
        if any(h <= 0 or not math.isfinite(h) for h in self.spacings):
            raise DegenerateLadder("spacings must be positive and finite")
        if any(a <= b for a, b in zip(self.spacings, self.spacings[1:])):
            raise DegenerateLadder("spacings must be strictly decreasing")
        if any(r < 0 or not math.isfinite(r) for r in self.residual_norms):
            raise DegenerateLadder("residual norms must be finite and non-negative")
