"""Numerical foundation: gamma, adaptive quadrature, order estimation."""

from .gamma import gamma, reciprocal_gamma
from .quadrature import OscillationHint, integrate_finite, integrate_semi_infinite
from .richardson import estimate_order
from .types import (
    OSCILLATORY_DEFAULT,
    SMOOTH_DEFAULT,
    QuadratureResult,
    ResidualReport,
    ToleranceSpec,
)

__all__ = [
    "OSCILLATORY_DEFAULT",
    "SMOOTH_DEFAULT",
    "OscillationHint",
    "QuadratureResult",
    "ResidualReport",
    "ToleranceSpec",
    "estimate_order",
    "gamma",
    "integrate_finite",
    "integrate_semi_infinite",
    "reciprocal_gamma",
]
