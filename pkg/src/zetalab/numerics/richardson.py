"""Convergence-order estimation from refinement ladders."""

from __future__ import annotations

import math

from ..errors import DegenerateLadder
from .types import ResidualReport

# Residuals at or below this absolute level are treated as "exactly zero"
# up to floating-point noise: no meaningful slope can be fit through them.
_MACHINE_FLOOR = 1e-14


def estimate_order(
    spacings,
    residuals,
    *,
    noise_floor: float | None = None,
) -> ResidualReport:
    """Least-squares slope of log(residual) against log(spacing).

    ``spacings`` must be strictly decreasing; at least three rungs are
    required for a slope.  Residuals that are all at machine level produce
    an ``exact_match`` report with no order.  When ``noise_floor`` is given,
    rungs whose residual is within a factor 4 of the floor are excluded
    from the fit; if fewer than three rungs survive, the report keeps the
    slope over the leading rungs but is marked ``floor_limited``.
    """
    h = [float(v) for v in spacings]
    r = [float(v) for v in residuals]
    if len(h) != len(r):
        raise DegenerateLadder("spacings and residuals must have equal length")
    if len(h) < 3:
        raise DegenerateLadder("order estimation needs at least three ladder rungs")

    if all(v <= _MACHINE_FLOOR for v in r):
        return ResidualReport(
            spacings=tuple(h),
            residual_norms=tuple(r),
            estimated_order=None,
            noise_floor=noise_floor,
            floor_limited=False,
            exact_match=True,
        )

    cut = 4.0 * noise_floor if noise_floor is not None else 0.0
    usable = [(hi, ri) for hi, ri in zip(h, r) if ri > max(cut, _MACHINE_FLOOR)]
    floor_limited = len(usable) < len(h)
    if len(usable) < 3:
        if all(v <= max(32.0 * _MACHINE_FLOOR, cut) for v in r):
            # Every rung sits at (or under) the sampling noise: the
            # identity is satisfied to the precision the samples allow
            # and no order is measurable.  That is a success of the
            # identity, not a ladder defect — fitting a slope through
            # roundoff would report nonsense.
            return ResidualReport(
                spacings=tuple(h),
                residual_norms=tuple(r),
                estimated_order=None,
                noise_floor=noise_floor,
                floor_limited=True,
                exact_match=True,
            )
        # Not enough clean rungs above the floor: fit through the coarse
        # end of the ladder anyway, flagged so callers know the fine rungs
        # are noise-dominated.
        usable = [(hi, ri) for hi, ri in zip(h, r) if ri > _MACHINE_FLOOR][:3]
        floor_limited = True
    if len(usable) < 3:
        raise DegenerateLadder("fewer than three rungs carry a measurable residual")

    lx = [math.log(hi) for hi, _ in usable]
    ly = [math.log(ri) for _, ri in usable]
    n = len(lx)
    mx = sum(lx) / n
    my = sum(ly) / n
    sxx = sum((v - mx) ** 2 for v in lx)
    if sxx == 0.0:
        raise DegenerateLadder("ladder spacings are numerically identical")
    sxy = sum((a - mx) * (b - my) for a, b in zip(lx, ly))
    slope = sxy / sxx

    return ResidualReport(
        spacings=tuple(h),
        residual_norms=tuple(r),
        estimated_order=slope,
        noise_floor=noise_floor,
        floor_limited=floor_limited,
        exact_match=False,
    )
