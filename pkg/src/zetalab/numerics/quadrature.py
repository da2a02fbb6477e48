"""Adaptive quadrature for the integral shapes used across the package.

Three building blocks, composable through two public entry points:

* a Gauss-Kronrod 7/15 panel rule driving a global-heap adaptive subdivision
  (smooth integrands, interior peaks),
* endpoint substitutions for algebraic singularities ``t^p`` with
  ``Re p > -1`` — a power map when the singular exponent is essentially
  real, and a logarithmic map when ``Im p`` is large, which turns the
  ``t^{i Im p}`` endpoint spiral into a *linear-phase* oscillation that the
  panel machinery below handles cheaply,
* phase-aligned panel summation with iterated-averaging (Euler)
  acceleration for oscillatory tails ``e^{i * rate * t^power}``.

Error accounting is deliberately conservative and raw: panel error is the
unrescaled |K15 - G7| difference, accelerated sums add the acceleration
increment to the accumulated panel errors, and truncated tails add the last
panel's magnitude.  Downstream checks assert that the reported estimate
actually bounds the true error within a small factor, so nothing here is
allowed to be optimistic.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import BudgetExceeded, DomainError, NonFiniteSample, SlowDecay
from .types import OSCILLATORY_DEFAULT, SMOOTH_DEFAULT, QuadratureResult, ToleranceSpec

__all__ = [
    "OscillationHint",
    "integrate_finite",
    "integrate_semi_infinite",
]

# --------------------------------------------------------------------------
# Gauss-Kronrod 7/15 rule (nodes/weights on [-1, 1])

_GK_NODES = np.array(
    [
        -0.991455371120813,
        -0.949107912342759,
        -0.864864423359769,
        -0.741531185599394,
        -0.586087235467691,
        -0.405845151377397,
        -0.207784955007898,
        0.0,
        0.207784955007898,
        0.405845151377397,
        0.586087235467691,
        0.741531185599394,
        0.864864423359769,
        0.949107912342759,
        0.991455371120813,
    ]
)

_GK_WEIGHTS_K = np.array(
    [
        0.022935322010529,
        0.063092092629979,
        0.104790010322250,
        0.140653259715525,
        0.169004726639267,
        0.190350578064785,
        0.204432940075298,
        0.209482141084728,
        0.204432940075298,
        0.190350578064785,
        0.169004726639267,
        0.140653259715525,
        0.104790010322250,
        0.063092092629979,
        0.022935322010529,
    ]
)

# Gauss-7 weights, aligned with the odd Kronrod node positions 1,3,...,13.
_GK_WEIGHTS_G = np.array(
    [
        0.129484966168870,
        0.279705391489277,
        0.381830050505119,
        0.417959183673469,
        0.381830050505119,
        0.279705391489277,
        0.129484966168870,
    ]
)

_GAUSS_IDX = np.arange(1, 15, 2)

# Cap on the coordinate scanned for decaying tails before declaring the
# integrand too slowly decaying to finish.
_TAIL_LIMIT = 1.0e4
# Cap on the logarithmic-head coordinate: exp((1-Re p) * w) must stay
# representable, so w is never pushed past this.
_LOG_HEAD_LIMIT = 650.0


@dataclass(frozen=True)
class OscillationHint:
    """Declares integrand phase ~ exp(i * rate * t**power) for large t."""

    rate: float
    power: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.rate):
            raise DomainError("oscillation rate must be finite")
        if not (self.power > 0 and math.isfinite(self.power)):
            raise DomainError("oscillation power must be positive and finite")


class _Budget:
    __slots__ = ("limit", "used")

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, n: int, partial=None):
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(
                f"evaluation budget of {self.limit} exhausted", partial=partial
            )


def _gk15(f: Callable, a: float, b: float):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    x = mid + half * _GK_NODES
    fx = np.asarray(f(x), dtype=np.complex128)
    if fx.shape != x.shape:
        raise DomainError("integrand must return one value per abscissa")
    if not np.all(np.isfinite(fx.real) & np.isfinite(fx.imag)):
        bad = x[~(np.isfinite(fx.real) & np.isfinite(fx.imag))][0]
        raise NonFiniteSample(f"integrand returned a non-finite value near t = {bad!r}")
    kron = half * np.sum(_GK_WEIGHTS_K * fx)
    gauss = half * np.sum(_GK_WEIGHTS_G * fx[_GAUSS_IDX])
    return complex(kron), abs(kron - gauss)


def _adaptive(
    f: Callable,
    a: float,
    b: float,
    abs_tol: float,
    rel_tol: float,
    budget: _Budget,
    live_floor: Callable[[], float] | None = None,
) -> tuple[complex, float]:
    """Globally adaptive GK15 on a finite interval.

    ``live_floor``, when given, is consulted each refinement step for an
    accuracy level below which splitting cannot help — used by callers
    whose integrand carries an irreducible representation error that only
    reveals itself at sampling time.  Refinement stops once the total
    estimate reaches that floor; the estimate itself keeps the full
    achieved value.
    """
    if b <= a:
        return 0.0 + 0.0j, 0.0
    budget.spend(15)
    value, err = _gk15(f, a, b)
    total_v = value
    total_e = err
    if total_e <= max(abs_tol, rel_tol * abs(total_v)):
        return total_v, total_e
    # Heap entries: (-err, tiebreak, a, b, value, err).  The counter keeps
    # ordering deterministic when two panels carry identical error.
    counter = 0
    heap = [(-err, counter, a, b, value, err)]
    # Sum of |panel value| over the live partition.  Each panel's error
    # estimate bottoms out around machine epsilon of its own magnitude, so
    # the summed estimate can never fall below ~eps * mag_sum: once the
    # target sits under that floor, further splitting only rearranges
    # roundoff and the honest move is to stop.  (For cancelling sums
    # mag_sum >> |total_v|, which is exactly the accuracy actually lost.)
    mag_sum = abs(value)
    while heap:
        floor = 32.0 * 2.220446049250313e-16 * mag_sum
        if live_floor is not None:
            floor = max(floor, live_floor())
        if total_e <= max(abs_tol, rel_tol * abs(total_v), floor):
            break
        neg_err, _, pa, pb, pv, pe = heapq.heappop(heap)
        pm = 0.5 * (pa + pb)
        if pm <= pa or pm >= pb:
            # Panel no longer splittable in floating point; keep its
            # contribution and error as-is.
            continue
        budget.spend(30, partial=total_v)
        lv, le = _gk15(f, pa, pm)
        rv, re_ = _gk15(f, pm, pb)
        total_v += lv + rv - pv
        total_e += le + re_ - pe
        mag_sum += abs(lv) + abs(rv) - abs(pv)
        counter += 1
        heapq.heappush(heap, (-le, counter, pa, pm, lv, le))
        counter += 1
        heapq.heappush(heap, (-re_, counter, pm, pb, rv, re_))
    return total_v, total_e


def _euler_accelerate(partials: list[complex]) -> tuple[complex, float]:
    """Iterated pairwise averaging of a partial-sum sequence.

    Classic van Wijngaarden resummation: replace the sequence by adjacent
    means until one value remains, tracking the newest entry at each stage.
    Returns the extrapolated limit and the size of the final averaging step,
    which serves as a conservative acceleration-error estimate.
    """
    row = list(partials)
    est = row[-1]
    delta = abs(est)
    while len(row) > 1:
        row = [0.5 * (row[i] + row[i + 1]) for i in range(len(row) - 1)]
        new_est = row[-1]
        delta = abs(new_est - est)
        est = new_est
    return est, delta


_MAX_ALIGNED_PANELS = 4000

# Fraction of the error budget granted to the j-th panel of a tail run,
# shrinking like 1/j^2 so the running total stays a small multiple of the
# budget no matter how many panels are needed.  A flat per-panel request
# would accumulate linearly and block the stopping rule on long runs.  The
# relative-tolerance escape inside _adaptive keeps the shrinking requests
# attainable: late panels are tiny, and a fixed relative accuracy of a tiny
# value is still cheap.
_PANEL_ERR_SHARE = 0.04


def _osc_panel_sum(
    f: Callable,
    start: float,
    rate: float,
    power: float,
    abs_tol: float,
    rel_tol: float,
    budget: _Budget,
    context: complex,
    coord_limit: float,
    what: str,
) -> tuple[complex, float]:
    """Sum of oscillation-aligned panels from ``start`` towards infinity.

    Panels end at the phase-aligned boundaries t_n = (n pi / rate)^{1/power}
    so consecutive panel contributions alternate in sign (after rotation by
    a slowly varying phase), which iterated averaging then resums.  The
    stretch before the first boundary — where the phase has completed less
    than a half-turn and alternation has nothing to grab — is covered by
    doubling panels first; for small rates that stretch carries almost all
    of the value.  The ``context`` value is the rest of the integral
    computed so far; it enters only the relative-tolerance test so the
    stopping rule sees the magnitude of the full result.
    """
    rate = abs(rate)
    n = max(1, math.ceil(rate * start**power / math.pi))
    boundary = (n * math.pi / rate) ** (1.0 / power)
    while boundary <= start:
        n += 1
        boundary = (n * math.pi / rate) ** (1.0 / power)
    # Individual panels are held to a tighter relative tolerance than the
    # total: their contributions partially cancel, so panel errors must be
    # small against the *sum*, not against each panel's own magnitude.
    panel_rel = max(rel_tol / 10.0, 1e-14)

    prefix = 0.0 + 0.0j
    prefix_err = 0.0
    seg = start
    panel_idx = 0
    while seg > 0.0 and seg < 0.5 * boundary:
        nxt = min(2.0 * seg, boundary)
        panel_idx += 1
        eff = max(abs_tol, rel_tol * abs(context + prefix))
        req = max(_PANEL_ERR_SHARE * eff / (panel_idx * panel_idx), 5e-324)
        pv, pe = _adaptive(f, seg, nxt, req, panel_rel, budget)
        prefix += pv
        prefix_err += pe
        seg = nxt
    lo = seg
    base = context + prefix

    partials: list[complex] = []
    running = 0.0 + 0.0j
    panel_err_sum = prefix_err
    best = 0.0 + 0.0j
    accel_err = math.inf
    small_streak = 0
    panel_count = 0
    prev_mag = math.inf
    while True:
        eff = max(abs_tol, rel_tol * abs(base + (best if partials else running)))
        panel_idx += 1
        req = max(_PANEL_ERR_SHARE * eff / (panel_idx * panel_idx), 5e-324)
        pv, pe = _adaptive(f, lo, boundary, req, panel_rel, budget)
        running += pv
        panel_err_sum += pe
        partials.append(running)
        panel_count += 1
        if len(partials) >= 6:
            best, accel_err = _euler_accelerate(partials[-24:])
            eff = max(abs_tol, rel_tol * abs(base + best))
            if accel_err + panel_err_sum <= eff:
                return prefix + best, accel_err + panel_err_sum
            if panel_count >= 12 and accel_err <= 0.01 * panel_err_sum:
                # The extrapolated limit is resolved far below the
                # quadrature error already committed in the panels, so
                # continuing cannot shrink the total: return what was
                # achieved and let the caller decide whether the (honest)
                # error is acceptable or the whole pass needs tighter
                # panel tolerances.
                return prefix + best, accel_err + panel_err_sum
        # The smallness exit is only sound while panels shrink: for phase
        # powers below one the early panels are tiny and *grow* toward the
        # envelope region, and exiting on them would silently drop the bulk
        # of the integral.
        if abs(pv) < eff / 10.0 and abs(pv) <= prev_mag:
            small_streak += 1
            if small_streak >= 2:
                # The panels themselves have decayed below tolerance: the
                # raw partial sum has converged, with the remainder bounded
                # by the last panel magnitude.  No resummation — averaging
                # would mix early partials back into a sequence that has
                # already settled.
                return prefix + running, panel_err_sum + abs(pv)
        else:
            small_streak = 0
        prev_mag = abs(pv)
        if boundary > coord_limit or panel_count >= _MAX_ALIGNED_PANELS:
            raise SlowDecay(
                f"{what} not settling after {panel_count} panels "
                f"(coordinate {boundary:.3g})",
                partial=prefix + (best if len(partials) >= 6 else running),
            )
        lo = boundary
        n += 1
        boundary = (n * math.pi / rate) ** (1.0 / power)


def _geometric_tail(
    f: Callable,
    start: float,
    abs_tol: float,
    rel_tol: float,
    budget: _Budget,
    context: complex,
) -> tuple[complex, float]:
    """Doubling panels for a non-oscillatory decaying tail."""
    lo = start
    running = 0.0 + 0.0j
    err_sum = 0.0
    small_streak = 0
    seg_idx = 0
    while True:
        hi = 2.0 * lo
        seg_idx += 1
        eff = max(abs_tol, rel_tol * abs(context + running))
        req = max(_PANEL_ERR_SHARE * eff / (seg_idx * seg_idx), 5e-324)
        pv, pe = _adaptive(f, lo, hi, req, rel_tol, budget)
        running += pv
        err_sum += pe
        if abs(pv) < eff / 10.0:
            small_streak += 1
            if small_streak >= 2:
                return running, err_sum + abs(pv)
        else:
            small_streak = 0
        if hi > _TAIL_LIMIT:
            raise SlowDecay(
                f"tail integrand still above tolerance at t = {hi:.3g}",
                partial=running,
            )
        lo = hi


def _power_substituted_head(
    f: Callable,
    a: float,
    b: float,
    p: complex,
    abs_tol: float,
    rel_tol: float,
    budget: _Budget,
    mirror: bool = False,
) -> tuple[complex, float]:
    """Integral over [a, b] of f with an algebraic singularity t^p.

    The singularity sits at ``a`` (or at ``b`` when ``mirror`` is set); the
    map t = a + (b-a) u^q flattens it into u^{q(1+p)-1}, integrable and
    Lipschitz once q >= 2/(1+Re p).

    When the singular endpoint is away from zero, mapped abscissae closer
    to it than an ulp round onto the endpoint itself, and an integrand
    written in terms of t has already lost the distance to cancellation.
    Samples inside that rounding wall are never handed to ``f``: they are
    taken as zero, and a bound on the walled-off mass — |h| grows from
    u = 0 like u^{q(1+Re p)-1} with exponent >= 1, so the sliver holds at
    most its width times a sample just outside — is added to the error
    estimate, once for the dropped mass and once for the bias the zeros
    leave in the panel sums.  The same bound feeds back into the
    refinement loop as a floor: past it the samples are quantization
    noise (the recovered distance is a staircase of ulps) and subdividing
    the noise would burn the whole budget localizing meaningless jumps.
    Accuracy beyond that bound does not exist for a t-form integrand in
    double precision; callers who need it must supply the integrand as a
    function of the endpoint distance instead.
    """
    q = max(2, math.ceil(2.0 / (1.0 + p.real)))
    width = b - a
    anchor = b if mirror else a
    d_wall = 4.0 * 2.220446049250313e-16 * abs(anchor)
    u_wall = (d_wall / width) ** (1.0 / q) if d_wall > 0.0 else 0.0
    if u_wall > 0.25:
        side = "right" if mirror else "left"
        raise DomainError(
            f"the {side}-endpoint singularity (exponent {p}) needs sampling "
            f"deeper than rounding allows on [{a}, {b}]; rewrite the "
            "integrand as a function of the endpoint distance"
            + (" and pass it as right_distance_form" if mirror else "")
        )
    state = {"touched": False, "bound": -1.0}

    def h(u):
        uq = u ** (q - 1)
        d = width * uq * u
        if u_wall > 0.0 and np.any(d < d_wall):
            state["touched"] = True
            safe = d >= d_wall
            out = np.zeros(u.shape, dtype=np.complex128)
            if np.any(safe):
                t = anchor - d[safe] if mirror else anchor + d[safe]
                out[safe] = f(t) * (width * q) * uq[safe]
            return out
        t = anchor - d if mirror else anchor + d
        return f(t) * (width * q) * uq

    def wall_bound() -> float:
        if state["bound"] < 0.0:
            budget.spend(1)
            probe = 2.0 * u_wall
            state["bound"] = abs(complex(h(np.array([probe]))[0])) * probe
        return state["bound"]

    def wall_floor() -> float:
        return 0.5 * wall_bound() if state["touched"] else 0.0

    v, e = _adaptive(
        h,
        0.0,
        1.0,
        abs_tol,
        rel_tol,
        budget,
        live_floor=wall_floor if u_wall > 0.0 else None,
    )
    if state["touched"]:
        e += 2.0 * wall_bound()
    return v, e


def _log_substituted_head(
    f: Callable,
    t1: float,
    p: complex,
    abs_tol: float,
    rel_tol: float,
    budget: _Budget,
    context: complex,
) -> tuple[complex, float]:
    """Integral over [0, t1] of f whose endpoint behavior is t^p with
    rapidly spinning phase (|Im p| large).

    Substituting t = t1 e^{-w} maps the endpoint spiral t^{i Im p} onto a
    linear phase e^{-i Im p w} with integrand decay e^{-(1+Re p) w}, which
    is exactly the shape the oscillation-panel summation handles.
    """

    def g(w):
        t = t1 * np.exp(-w)
        return f(t) * t

    return _osc_panel_sum(
        g,
        0.0,
        abs(p.imag),
        1.0,
        abs_tol,
        rel_tol,
        budget,
        context,
        _LOG_HEAD_LIMIT,
        "singular-head oscillation",
    )


def _check_singular_exponent(p: complex | None) -> complex | None:
    if p is None:
        return None
    p = complex(p)
    if not (math.isfinite(p.real) and math.isfinite(p.imag)):
        raise DomainError("singular exponent must be finite")
    if p.real <= -1.0:
        raise DomainError(
            f"endpoint exponent {p} gives a non-integrable singularity (Re <= -1)"
        )
    if p == 0:
        return None
    return p


def integrate_finite(
    f: Callable,
    a: float,
    b: float,
    tol: ToleranceSpec | None = None,
    *,
    singular_exponent_left: complex | None = None,
    singular_exponent_right: complex | None = None,
    right_distance_form: Callable | None = None,
) -> QuadratureResult:
    """Integrate ``f`` over the finite interval [a, b].

    ``f`` receives a float64 array of interior abscissae and must return a
    matching array of values (real or complex).  Endpoint algebraic
    singularities — integrand behaving like ``(t-a)^p`` or ``(b-t)^p`` —
    must be declared through the ``singular_exponent_*`` keywords so the
    appropriate change of variables is applied; ``Re p > -1`` is required.

    The flattening substitution for a right-side singularity samples
    `b - distance`, which rounds onto ``b`` itself once the distance drops
    under an ulp — and the integrand typically recovers that distance as
    ``b - t``, i.e. as exactly zero.  Sampling stops at that wall: the
    result then carries the walled-off mass in its error estimate and
    reports ``converged=False`` when the tolerance cannot be met, which is
    the best any t-form integrand admits.  ``right_distance_form``, a
    second representation of the same integrand as a function of
    v = b - t, avoids both roundings; supply it whenever the right
    singularity is strong enough to need deep sampling.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("integration endpoints must be finite")
    if not b > a:
        raise DomainError(f"need a < b, got [{a}, {b}]")
    tol = tol or SMOOTH_DEFAULT
    pl = _check_singular_exponent(singular_exponent_left)
    pr = _check_singular_exponent(singular_exponent_right)
    budget = _Budget(tol.max_evaluations)

    def right_head(lo: float, habs: float, hrel: float):
        # Integral over [lo, b] owning the right-endpoint singularity.
        if right_distance_form is None:
            return _power_substituted_head(
                f, lo, b, pr, habs, hrel, budget, mirror=True
            )
        return _power_substituted_head(
            right_distance_form, 0.0, b - lo, pr, habs, hrel, budget
        )

    if pl is None and pr is None:
        v, e = _adaptive(f, a, b, tol.abs_tol, tol.rel_tol, budget)
    elif pr is None:
        v, e = _power_substituted_head(f, a, b, pl, tol.abs_tol, tol.rel_tol, budget)
    elif pl is None:
        v, e = right_head(a, tol.abs_tol, tol.rel_tol)
    else:
        m = 0.5 * (a + b)
        v1, e1 = _power_substituted_head(
            f, a, m, pl, tol.abs_tol / 2.0, tol.rel_tol / 2.0, budget
        )
        v2, e2 = right_head(m, tol.abs_tol / 2.0, tol.rel_tol / 2.0)
        v, e = v1 + v2, e1 + e2

    return QuadratureResult(
        value=v,
        abs_error_estimate=e,
        evaluations=budget.used,
        converged=e <= tol.target(abs(v)),
    )


def integrate_semi_infinite(
    f: Callable,
    tol: ToleranceSpec | None = None,
    *,
    oscillation: OscillationHint | None = None,
    singular_exponent: complex | None = None,
) -> QuadratureResult:
    """Integrate ``f`` over [0, infinity).

    The integrand must eventually decay in modulus; a tail that has not
    fallen below tolerance by t = 1e4 raises :class:`SlowDecay`.  Persistent
    oscillation ``exp(i rate t^power)`` must be declared via ``oscillation``
    — the tail is then summed over phase-aligned panels and accelerated, so
    algebraically-damped oscillatory integrals (modulus ~ 1/t) converge in a
    few thousand evaluations.  An origin singularity ``t^p`` is declared
    via ``singular_exponent``; large ``Im p`` (a log-phase spiral at 0) is
    handled by a logarithmic substitution rather than brute subdivision.
    """
    if oscillation is not None and oscillation.rate == 0.0:
        oscillation = None
    tol = tol or (OSCILLATORY_DEFAULT if oscillation is not None else SMOOTH_DEFAULT)
    p = _check_singular_exponent(singular_exponent)
    budget = _Budget(tol.max_evaluations)

    # Split point between head ([0, t1], owns the origin singularity) and
    # tail ([t1, inf), owns decay/oscillation).  The head must not contain
    # more than the first half-oscillation.
    t1 = 1.0
    if oscillation is not None:
        first = (math.pi / abs(oscillation.rate)) ** (1.0 / oscillation.power)
        t1 = min(1.0, first)

    # Stage errors are controlled against running magnitudes, so when the
    # head and the oscillatory tail nearly cancel, a first pass can come
    # back with an honest error estimate that is small against the stages
    # but large against the final value.  In that case the pass is repeated
    # with the relative request shrunk by the observed overshoot — the
    # first pass has revealed the cancellation factor.
    rel_scale = 1.0
    for _attempt in range(4):
        half_abs = tol.abs_tol / 2.0
        half_rel = tol.rel_tol * rel_scale / 2.0

        if p is None:
            hv, he = _adaptive(f, 0.0, t1, half_abs, half_rel, budget)
        elif abs(p.imag) <= 4.0:
            hv, he = _power_substituted_head(f, 0.0, t1, p, half_abs, half_rel, budget)
        else:
            hv, he = _log_substituted_head(
                f, t1, p, half_abs, half_rel, budget, 0.0 + 0.0j
            )

        if oscillation is not None:
            # Alternation, not decay, is what makes an oscillatory tail
            # converge, so no coordinate cap applies: the panel-count cap and
            # the evaluation budget bound the work instead.
            tv, te = _osc_panel_sum(
                f,
                t1,
                oscillation.rate,
                oscillation.power,
                half_abs,
                half_rel,
                budget,
                hv,
                math.inf,
                "oscillatory tail",
            )
        else:
            tv, te = _geometric_tail(f, t1, half_abs, half_rel, budget, hv)

        v = hv + tv
        e = he + te
        target = tol.target(abs(v))
        if e <= target:
            break
        shrink = 0.25 * target / e
        rel_scale *= shrink
        if tol.rel_tol * rel_scale < 1e-15:
            # The request has fallen below what float64 samples can satisfy;
            # return the best pass and let converged=False say so.
            break

    return QuadratureResult(
        value=v,
        abs_error_estimate=e,
        evaluations=budget.used,
        converged=e <= tol.target(abs(v)),
    )
