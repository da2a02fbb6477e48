"""Oscillatory wave families on the half plane y >= 0.

The central object is the envelope-integral wave

    W(x, y) = int_0^inf  t^{z-1} e^{i x t^{1-beta}} g(t + y t^beta) dt

for a decaying envelope profile g and a family parameter beta in [0, 1].
With the logistic envelope g(s) = 1/(1+e^s) this is the gamma-weighted
wave whose value at the origin reduces to the zero-condition integral of
the zeta module — so the wave vanishes at (0, 0) exactly on the
critical-line zeros.

Also here: the unit-interval and half-line boundary families (an outer
integral over the logistic weight times an inner u-integral), boosts,
scale averages over boosts with their factorized shortcut, overlap
integrals, a derivative recurrence, and decay-envelope probes.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _kernels as kernels
from . import zeta as _zeta
from .errors import DomainError, LogDivergence, NonDecayingTrend, TruncationWarning
from .numerics.gamma import gamma
from .numerics.quadrature import (
    OscillationHint,
    integrate_finite,
    integrate_semi_infinite,
)
from .numerics.richardson import estimate_order
from .numerics.types import QuadratureResult, ResidualReport, ToleranceSpec

import warnings

__all__ = [
    "EnvelopeSpec",
    "FERMI",
    "EXPONENTIAL",
    "GAUSSIAN",
    "HalfPlanePoint",
    "OverlapTrend",
    "DecayProbe",
    "boost",
    "boundary_wave",
    "boundary_wave_y0",
    "decay_probe",
    "derivative_recurrence_residual",
    "eigen_orthogonality",
    "envelope_integrand",
    "envelope_wave",
    "fermi_wave",
    "interval_integrand",
    "orthogonality_scalar",
    "orthogonality_reference_scale",
    "power_scale_map",
    "scale_average",
    "scale_average_reference_scale",
    "self_overlap_trend",
]

_WAVE_DEFAULT = ToleranceSpec(rel_tol=1e-8, abs_tol=1e-14)

_ENV_KIND_IDS = {
    "fermi": kernels.ENV_FERMI,
    "exponential": kernels.ENV_EXPONENTIAL,
    "gaussian": kernels.ENV_GAUSSIAN,
}


@dataclass(frozen=True)
class EnvelopeSpec:
    """A decaying envelope profile g on [0, inf).

    Builtin kinds: ``fermi`` (logistic 1/(1+e^s)), ``exponential`` (e^-s),
    ``gaussian`` (e^-s^2).  ``custom`` requires ``fn``, a vectorized
    callable on float arrays; it must decay fast enough for the integrals
    it is used in, which the quadrature engine verifies at runtime rather
    than trusting.
    """

    kind: str = "fermi"
    fn: Callable | None = None

    def __post_init__(self):
        if self.kind not in ("fermi", "exponential", "gaussian", "custom"):
            raise DomainError(f"unknown envelope kind {self.kind!r}")
        if self.kind == "custom" and self.fn is None:
            raise DomainError("custom envelopes need fn")
        if self.kind != "custom" and self.fn is not None:
            raise DomainError("fn is only accepted for kind='custom'")

    @property
    def kernel_id(self) -> int | None:
        """Integer id for the compiled kernels; None for custom profiles."""
        return _ENV_KIND_IDS.get(self.kind)

    def values(self, s) -> np.ndarray:
        arr = np.asarray(s, dtype=np.float64)
        if self.kind == "custom":
            return np.asarray(self.fn(arr), dtype=np.complex128)
        return kernels.envelope_values(arr, _ENV_KIND_IDS[self.kind])

    def at_zero(self) -> complex:
        return complex(self.values(np.array([0.0]))[0])


FERMI = EnvelopeSpec("fermi")
EXPONENTIAL = EnvelopeSpec("exponential")
GAUSSIAN = EnvelopeSpec("gaussian")


@dataclass(frozen=True)
class HalfPlanePoint:
    """A point (x, y) with y >= 0."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DomainError("coordinates must be finite")
        if self.y < 0.0:
            raise DomainError(f"the family lives on y >= 0, got y = {self.y}")


def boost(p: HalfPlanePoint, k: float) -> HalfPlanePoint:
    """The hyperbolic scaling (x, y) -> (x/k, k y), k > 0."""
    if not (k > 0.0 and math.isfinite(k)):
        raise DomainError("boost parameter must be positive and finite")
    return HalfPlanePoint(p.x / k, k * p.y)


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not (0.0 <= beta <= 1.0):
        raise DomainError(f"beta must lie in [0, 1], got {beta}")
    return beta


def _check_strip_exponent(z: complex) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("z must be finite")
    if z.real <= 0.0:
        raise DomainError(f"Re z > 0 required for integrability at 0, got {z}")
    return z


def envelope_integrand(
    p: HalfPlanePoint, t, z: complex, beta: float, envelope: EnvelopeSpec = FERMI
):
    """Pointwise integrand  t^{z-1} e^{i x t^{1-beta}} g(t + y t^beta)."""
    z = _check_strip_exponent(z)
    beta = _check_beta(beta)
    arr = np.asarray(t, dtype=np.float64)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(arr <= 0.0):
        raise DomainError("integrand is defined for t > 0")
    if envelope.kernel_id is not None:
        out = kernels.wave_integrand(
            arr, z.real, z.imag, beta, p.x, p.y, envelope.kernel_id
        )
    else:
        lt = np.log(arr)
        out = (
            np.exp((z - 1.0) * lt + 1j * p.x * np.exp((1.0 - beta) * lt))
            * envelope.values(arr + p.y * np.exp(beta * lt))
        )
    return complex(out[0]) if scalar else out


# Above this many phase-aligned panels the oscillatory walk costs more than
# rotating the integration contour.  The builtin profiles are analytic in
# the swept sector (the fermi poles sit at angles >= (1-beta) pi/2), so for
# them the ray where the phase decays instead of oscillating gives the same
# value in a fraction of the work — and is the only practical route once
# |x| grows, since the walk needs O(|x|) panels whose alternating sum
# cancels ever more catastrophically (the wave is exponentially small in
# |x| on the suppressed side while every panel stays order one).
_ROTATE_PANEL_LIMIT = 16.0


def _rotation_angle(beta: float, envelope: EnvelopeSpec) -> float:
    # Gaussian decay needs Re(s^2) > 0, halving the usable sector.
    cap = 0.25 * math.pi if envelope.kind == "gaussian" else 0.5 * math.pi
    return 0.75 * (1.0 - beta) * cap


def _wave_rotation_pays(p: HalfPlanePoint, beta: float, envelope: EnvelopeSpec) -> bool:
    if p.x == 0.0 or beta >= 1.0 or envelope.kernel_id is None:
        return False
    cut = 6.8 if envelope.kind == "gaussian" else 45.0
    panels = abs(p.x) * cut ** (1.0 - beta) / math.pi
    return panels > _ROTATE_PANEL_LIMIT


def _rotated_wave(
    p: HalfPlanePoint,
    z: complex,
    beta: float,
    envelope: EnvelopeSpec,
    tol: ToleranceSpec,
) -> QuadratureResult:
    """The wave integral along the ray arg(t^{1-beta}) = sgn(x) theta."""
    theta = _rotation_angle(beta, envelope)
    alpha = math.copysign(theta, p.x)
    zz = z / (1.0 - beta)
    pref = cmath.exp(1j * alpha * zz) / (1.0 - beta)
    kid = envelope.kernel_id

    def f(rho):
        return kernels.rotated_wave_integrand(
            rho, z.real, z.imag, beta, p.x, p.y, theta, kid
        )

    inner = ToleranceSpec(
        rel_tol=tol.rel_tol,
        abs_tol=max(tol.abs_tol / max(abs(pref), 1e-300), 5e-324),
        max_evaluations=tol.max_evaluations,
    )
    res = integrate_semi_infinite(f, inner, singular_exponent=zz - 1.0)
    return QuadratureResult(
        value=pref * res.value,
        abs_error_estimate=abs(pref) * res.abs_error_estimate,
        evaluations=res.evaluations,
        converged=res.converged,
    )


def envelope_wave(
    p: HalfPlanePoint,
    z: complex,
    beta: float,
    envelope: EnvelopeSpec = FERMI,
    tol: ToleranceSpec | None = None,
) -> QuadratureResult:
    """The wave integral itself (no gamma normalization)."""
    z = _check_strip_exponent(z)
    beta = _check_beta(beta)
    tol = tol or _WAVE_DEFAULT
    if _wave_rotation_pays(p, beta, envelope):
        return _rotated_wave(p, z, beta, envelope, tol)
    hint = None
    if p.x != 0.0 and beta < 1.0:
        hint = OscillationHint(rate=p.x, power=1.0 - beta)
    if envelope.kernel_id is not None:
        kid = envelope.kernel_id

        def f(t):
            return kernels.wave_integrand(t, z.real, z.imag, beta, p.x, p.y, kid)

    else:

        def f(t):
            lt = np.log(t)
            return np.exp(
                (z - 1.0) * lt + 1j * p.x * np.exp((1.0 - beta) * lt)
            ) * envelope.values(t + p.y * np.exp(beta * lt))

    return integrate_semi_infinite(f, tol, oscillation=hint, singular_exponent=z - 1.0)


def fermi_wave(
    p: HalfPlanePoint,
    z: complex,
    beta: float,
    tol: ToleranceSpec | None = None,
    *,
    normalized: bool = True,
) -> QuadratureResult:
    """The logistic-envelope wave; gamma-normalized by default.

    ``normalized=True`` divides by Gamma(z) (the bounded family member),
    ``normalized=False`` returns the raw integral.  At the origin the
    integral *is* the zero-condition integral, and is delegated to that
    dedicated (contour-rotated) routine so the cancellation at large
    |Im z| is handled properly.
    """
    z = _check_strip_exponent(z)
    beta = _check_beta(beta)
    g = gamma(z)
    if normalized:
        tol_raw = (tol or _WAVE_DEFAULT).scaled(absolute=abs(g))
    else:
        tol_raw = tol or _WAVE_DEFAULT
    if p.x == 0.0 and p.y == 0.0:
        raw = _zeta._zero_condition_raw(z, tol_raw)
    else:
        raw = envelope_wave(p, z, beta, FERMI, tol_raw)
    if not normalized:
        return raw
    return QuadratureResult(
        value=raw.value / g,
        abs_error_estimate=raw.abs_error_estimate / abs(g),
        evaluations=raw.evaluations,
        converged=raw.converged,
    )


# --------------------------------------------------------------------------
# Unit-interval / half-line boundary family

_VARIANTS = ("interval", "halfline")


def _check_interval_exponent(theta: complex) -> complex:
    theta = complex(theta)
    if not (0.0 < theta.real < 1.0):
        raise DomainError(
            f"0 < Re theta < 1 required for endpoint integrability, got {theta}"
        )
    return theta


def interval_integrand(
    p: HalfPlanePoint,
    u,
    theta: complex,
    beta: float = 0.5,
    envelope: EnvelopeSpec = EXPONENTIAL,
    scale: float = 1.0,
    variant: str = "interval",
):
    """Pointwise boundary-family integrand at parameter u.

    interval:  u^{th-1} (1-u)^{-th} e^{-i x y u} g(scale * y u^b (1-u)^{1-b})
    halfline:  u^{th-1} (1+u)^{-th} e^{+i x y u} g(scale * y u^b (1+u)^{1-b})
    """
    theta = _check_interval_exponent(theta)
    beta = _check_beta(beta)
    if variant not in _VARIANTS:
        raise DomainError(f"variant must be one of {_VARIANTS}")
    arr = np.asarray(u, dtype=np.float64)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if variant == "interval" and np.any((arr <= 0.0) | (arr >= 1.0)):
        raise DomainError("interval variant needs 0 < u < 1")
    if variant == "halfline" and np.any(arr <= 0.0):
        raise DomainError("halfline variant needs u > 0")
    a = p.x * p.y
    c = scale * p.y
    vid = 0 if variant == "interval" else 1
    if envelope.kernel_id is not None:
        out = kernels.interval_integrand(
            arr, theta.real, theta.imag, a, c, beta, envelope.kernel_id, vid
        )
    else:
        lu = np.log(arr)
        lv = np.log(1.0 - arr) if vid == 0 else np.log1p(arr)
        sign = -1.0 if vid == 0 else 1.0
        xi = c * np.exp(beta * lu + (1.0 - beta) * lv)
        out = np.exp((theta - 1.0) * lu - theta * lv + 1j * sign * a * arr)
        out = out * envelope.values(xi)
    return complex(out[0]) if scalar else out


def _u_integral(
    a: float,
    c: float,
    theta: complex,
    beta: float,
    envelope: EnvelopeSpec,
    variant: str,
    tol: ToleranceSpec,
) -> QuadratureResult:
    vid = 0 if variant == "interval" else 1
    f_dist = None
    if envelope.kernel_id is not None:
        kid = envelope.kernel_id

        def f(u):
            return kernels.interval_integrand(
                u, theta.real, theta.imag, a, c, beta, kid, vid
            )

        if vid == 0:

            def f_dist(v):
                return kernels.interval_integrand(
                    v, theta.real, theta.imag, a, c, beta, kid, 2
                )

    else:

        def f(u):
            lu = np.log(u)
            lv = np.log(1.0 - u) if vid == 0 else np.log1p(u)
            sign = -1.0 if vid == 0 else 1.0
            xi = c * np.exp(beta * lu + (1.0 - beta) * lv)
            return np.exp(
                (theta - 1.0) * lu - theta * lv + 1j * sign * a * u
            ) * envelope.values(xi)

        if vid == 0:

            def f_dist(v):
                # Same integrand addressed by the distance to u = 1, so the
                # strong right-end singularity never loses precision to the
                # 1 - u subtraction.
                lu = np.log1p(-v)
                lv = np.log(v)
                xi = c * np.exp(beta * lu + (1.0 - beta) * lv)
                return np.exp(
                    (theta - 1.0) * lu - theta * lv - 1j * a * (1.0 - v)
                ) * envelope.values(xi)

    if vid == 0:
        return integrate_finite(
            f,
            0.0,
            1.0,
            tol,
            singular_exponent_left=theta - 1.0,
            singular_exponent_right=-theta,
            right_distance_form=f_dist,
        )
    hint = OscillationHint(rate=a, power=1.0) if a != 0.0 else None
    return integrate_semi_infinite(
        f, tol, oscillation=hint, singular_exponent=theta - 1.0
    )


def power_scale_map(exponent: float) -> Callable:
    """The scale profile k(t) = t^exponent for the boundary family."""
    if not math.isfinite(exponent):
        raise DomainError("exponent must be finite")

    def k(t: float) -> float:
        return float(t) ** exponent

    return k


def boundary_wave(
    p: HalfPlanePoint,
    z: complex,
    theta: complex,
    beta: float = 0.5,
    envelope: EnvelopeSpec = EXPONENTIAL,
    scale_map: Callable | None = None,
    variant: str = "interval",
    tol: ToleranceSpec | None = None,
) -> QuadratureResult:
    """The boundary wave: logistic-weighted outer integral over t of the
    inner u-integrand with envelope argument scale_map(t) * y * (u-profile).

    With ``scale_map=None`` the scale profile is the constant 1 and the
    double integral factorizes exactly into (zero-condition integral) x
    (u-integral); this shortcut is taken because it is the identical
    mathematical object, not an approximation.  A consequence worth
    spelling out: on the boundary y = 0 the phase e^{-i x y u} collapses to
    1, so the value is x-independent *structurally*; the numerical check of
    that fact exercises the quadrature plumbing, not deep cancellation.

    For the half-line variant at y = 0 the u-integral loses its envelope
    decay and diverges logarithmically; this raises :class:`LogDivergence`.
    """
    z = _check_strip_exponent(z)
    theta = _check_interval_exponent(theta)
    beta = _check_beta(beta)
    if variant not in _VARIANTS:
        raise DomainError(f"variant must be one of {_VARIANTS}")
    if variant == "halfline" and p.y == 0.0:
        raise LogDivergence(
            "half-line boundary wave diverges logarithmically at y = 0 "
            "(the envelope argument vanishes identically)"
        )
    tol = tol or _WAVE_DEFAULT
    a = p.x * p.y

    if scale_map is None:
        inner = _u_integral(a, p.y, theta, beta, envelope, variant, tol.scaled(0.5, 0.5))
        outer = _zeta._zero_condition_raw(
            z,
            ToleranceSpec(
                rel_tol=tol.rel_tol / 2.0,
                abs_tol=max(tol.abs_tol / (2.0 * max(abs(inner.value), 1e-30)), 5e-324),
                max_evaluations=tol.max_evaluations,
            ),
        )
        err = (
            abs(outer.value) * inner.abs_error_estimate
            + abs(inner.value) * outer.abs_error_estimate
            + inner.abs_error_estimate * outer.abs_error_estimate
        )
        return QuadratureResult(
            value=outer.value * inner.value,
            abs_error_estimate=err,
            evaluations=inner.evaluations + outer.evaluations,
            converged=inner.converged and outer.converged,
        )

    inner_tol = tol.scaled(0.125, 0.125)
    inner_evals = 0

    def outer_integrand(t):
        nonlocal inner_evals
        t = np.atleast_1d(np.asarray(t, dtype=np.float64))
        out = np.empty(t.shape, dtype=np.complex128)
        weight = kernels.envelope_values(t, kernels.ENV_FERMI)
        for i, ti in enumerate(t):
            res = _u_integral(
                a, scale_map(ti) * p.y, theta, beta, envelope, variant, inner_tol
            )
            inner_evals += res.evaluations
            lt = math.log(ti)
            out[i] = cmath.exp((z - 1.0) * lt) * weight[i] * res.value
        return out

    res = integrate_semi_infinite(
        outer_integrand, tol, singular_exponent=z - 1.0
    )
    return QuadratureResult(
        value=res.value,
        abs_error_estimate=res.abs_error_estimate,
        evaluations=res.evaluations + inner_evals,
        converged=res.converged,
    )


def boundary_wave_y0(
    z: complex,
    theta: complex,
    envelope: EnvelopeSpec = EXPONENTIAL,
    tol: ToleranceSpec | None = None,
) -> QuadratureResult:
    """Fast path for the interval boundary wave on y = 0.

    There the u-integral is the Euler integral Gamma(theta) Gamma(1-theta)
    times g(0), so the wave is that constant times the zero-condition
    integral — it inherits every critical-line zero.
    """
    z = _check_strip_exponent(z)
    theta = _check_interval_exponent(theta)
    tol = tol or _WAVE_DEFAULT
    factor = gamma(theta) * gamma(1.0 - theta) * envelope.at_zero()
    raw = _zeta._zero_condition_raw(
        z,
        ToleranceSpec(
            rel_tol=tol.rel_tol,
            abs_tol=max(tol.abs_tol / max(abs(factor), 1e-30), 5e-324),
            max_evaluations=tol.max_evaluations,
        ),
    )
    return QuadratureResult(
        value=raw.value * factor,
        abs_error_estimate=raw.abs_error_estimate * abs(factor),
        evaluations=raw.evaluations,
        converged=raw.converged,
    )


# --------------------------------------------------------------------------
# Scale averages over boosts

def _scale_factor_integral(
    x: float, y: float, z: complex, tol: ToleranceSpec
) -> QuadratureResult:
    """int_0^inf ds/s e^{i x s} (1 + y/s)^{-z}  — the boost-average factor."""

    def f(s):
        return kernels.scale_factor_integrand(s, z.real, z.imag, x, y)

    return integrate_semi_infinite(
        f,
        tol,
        oscillation=OscillationHint(rate=x, power=1.0),
        singular_exponent=z - 1.0,
    )


def scale_average(
    p: HalfPlanePoint,
    z: complex,
    beta: float = 0.5,
    tol: ToleranceSpec | None = None,
    *,
    path: str = "factorized",
    weight: Callable | None = None,
) -> QuadratureResult:
    """Average of the raw logistic wave over all boosts:

        J(x, y) = int_0^inf dk/k  W(x/k, k y)

    The substitution k = s t^{1-beta} inside the double integral shows J is
    independent of beta and factorizes into (zero-condition integral) times
    the closed oscillatory factor handled by ``path='factorized'``.  The
    ``path='direct'`` route actually performs the boost integral over
    nested wave evaluations — slow, but sharing nothing with the shortcut,
    which is what makes the comparison between the two meaningful.

    Requires x != 0 and y > 0 (either axis degenerates into a divergent
    boost integral).  ``weight``, a callable on k, is admitted only on the
    direct path: the factorized form exists for the flat weight alone.
    """
    z = _check_strip_exponent(z)
    beta = _check_beta(beta)
    if p.x == 0.0:
        raise DomainError("scale average needs x != 0 (boost integral diverges)")
    if p.y <= 0.0:
        raise DomainError("scale average needs y > 0 (boost integral diverges)")
    tol = tol or ToleranceSpec(rel_tol=1e-7, abs_tol=1e-14)

    if path == "factorized":
        if weight is not None:
            raise DomainError("weighted averages have no factorized form")
        osc = _scale_factor_integral(p.x, p.y, z, tol.scaled(0.5, 0.5))
        zc = _zeta._zero_condition_raw(
            z,
            ToleranceSpec(
                rel_tol=tol.rel_tol / 2.0,
                abs_tol=max(tol.abs_tol / (2.0 * max(abs(osc.value), 1e-30)), 5e-324),
                max_evaluations=tol.max_evaluations,
            ),
        )
        err = (
            abs(zc.value) * osc.abs_error_estimate
            + abs(osc.value) * zc.abs_error_estimate
            + osc.abs_error_estimate * zc.abs_error_estimate
        )
        return QuadratureResult(
            value=osc.value * zc.value,
            abs_error_estimate=err,
            evaluations=osc.evaluations + zc.evaluations,
            converged=osc.converged and zc.converged,
        )

    if path != "direct":
        raise DomainError(f"unknown path {path!r}; use 'factorized' or 'direct'")

    # Inner waves need relative accuracy a couple of orders beyond the
    # outer request, but their absolute floor must NOT be scaled down: the
    # outer integral dilutes pointwise absolute errors over an O(30) range
    # in w, so tol.abs_tol itself is already far tighter than needed.
    inner_tol = ToleranceSpec(
        rel_tol=0.02 * tol.rel_tol,
        abs_tol=tol.abs_tol,
        max_evaluations=tol.max_evaluations,
    )
    inner_evals = 0
    inner_ok = True
    inner_claim_peak = 0.0

    def half(sign: float):
        # w >= 0 half-line of the substitution k = e^{sign * w}.  The
        # outer quadrature revisits identical nodes when it retries a
        # stage at tighter tolerance, and every revisit would otherwise
        # rerun a full nested wave integral — so memoize on the exact
        # float abscissa.
        seen: dict[float, complex] = {}

        def f(w):
            nonlocal inner_evals, inner_ok, inner_claim_peak
            w = np.atleast_1d(np.asarray(w, dtype=np.float64))
            out = np.empty(w.shape, dtype=np.complex128)
            for i, wi in enumerate(w):
                wi = float(wi)
                cached = seen.get(wi)
                if cached is not None:
                    out[i] = cached
                    continue
                k = math.exp(sign * wi)
                q = envelope_wave(
                    HalfPlanePoint(p.x / k, k * p.y), z, beta, FERMI, inner_tol
                )
                inner_evals += q.evaluations
                inner_ok = inner_ok and q.converged
                if q.abs_error_estimate > inner_claim_peak:
                    inner_claim_peak = q.abs_error_estimate
                val = q.value * (weight(k) if weight is not None else 1.0)
                seen[wi] = val
                out[i] = val
            return out

        rate = abs(z.imag) / beta if sign > 0 else abs(z.imag) / (1.0 - beta)
        hint = OscillationHint(rate=rate, power=1.0) if rate > 0.05 else None
        return integrate_semi_infinite(f, tol.scaled(0.5, 0.5), oscillation=hint)

    if beta in (0.0, 1.0):
        raise DomainError("direct scale average needs 0 < beta < 1")
    up = half(+1.0)
    down = half(-1.0)
    # The outer quadrature treats inner wave values as exact samples, which
    # is justified only while every nested evaluation met its own request;
    # if one did not, surface its claimed error instead of hiding it.
    err = up.abs_error_estimate + down.abs_error_estimate
    if not inner_ok:
        err += inner_claim_peak
    return QuadratureResult(
        value=up.value + down.value,
        abs_error_estimate=err,
        evaluations=up.evaluations + down.evaluations + inner_evals,
        converged=up.converged and down.converged and inner_ok,
    )


def scale_average_reference_scale(
    p: HalfPlanePoint, z: complex, tol: ToleranceSpec | None = None
) -> float:
    """|osc factor| * |Gamma(z) (1 - 2^{1-z})|: the magnitude the scale
    average would have if the zero-condition integral sat at its natural
    size.  Zero detection is judged against this."""
    z = _check_strip_exponent(z)
    tol = tol or ToleranceSpec(rel_tol=1e-7, abs_tol=1e-14)
    osc = _scale_factor_integral(p.x, p.y, z, tol)
    return abs(osc.value) * _zeta.gamma_weighted_scale(z)


# --------------------------------------------------------------------------
# Overlap integrals

def orthogonality_scalar(
    z: complex,
    beta: float = 0.5,
    profile: EnvelopeSpec = GAUSSIAN,
    tol: ToleranceSpec | None = None,
    *,
    path: str = "reduced",
    cut: float = 30.0,
) -> QuadratureResult:
    """The overlap  D = int_0^inf int_0^inf conj(G(x y)) W(x, y) dx dy
    of the raw logistic wave against a profile of the product x*y.

    Substituting xi = x y collapses D onto the boost average:
    D = int_0^inf conj(G(xi)) J(xi, 1) dxi, and J factorizes through the
    zero-condition integral — so D vanishes on the critical-line zeros.
    ``path='reduced'`` computes that collapsed form; ``path='direct2d'``
    does the honest two-dimensional truncated integral for cross-checking
    (at a few-percent accuracy; it warns if the cut looks too tight).
    """
    z = _check_strip_exponent(z)
    beta = _check_beta(beta)
    tol = tol or ToleranceSpec(rel_tol=1e-6, abs_tol=1e-12)

    if path == "reduced":
        osc_tol = tol.scaled(0.1, 0.1)
        inner_evals = 0

        def f(xi):
            nonlocal inner_evals
            xi = np.atleast_1d(np.asarray(xi, dtype=np.float64))
            out = np.empty(xi.shape, dtype=np.complex128)
            gv = np.conj(profile.values(xi))
            for i, g in enumerate(gv):
                if g == 0.0:
                    out[i] = 0.0
                    continue
                osc = _scale_factor_integral(float(xi[i]), 1.0, z, osc_tol)
                inner_evals += osc.evaluations
                out[i] = g * osc.value
            return out

        outer = integrate_semi_infinite(f, tol.scaled(0.5, 0.5))
        zc = _zeta._zero_condition_raw(
            z,
            ToleranceSpec(
                rel_tol=tol.rel_tol / 2.0,
                abs_tol=max(tol.abs_tol / (2.0 * max(abs(outer.value), 1e-30)), 5e-324),
                max_evaluations=tol.max_evaluations,
            ),
        )
        err = (
            abs(zc.value) * outer.abs_error_estimate
            + abs(outer.value) * zc.abs_error_estimate
            + outer.abs_error_estimate * zc.abs_error_estimate
        )
        return QuadratureResult(
            value=outer.value * zc.value,
            abs_error_estimate=err,
            evaluations=outer.evaluations + inner_evals + zc.evaluations,
            converged=outer.converged and zc.converged,
        )

    if path != "direct2d":
        raise DomainError(f"unknown path {path!r}; use 'reduced' or 'direct2d'")
    if not (cut > 0 and math.isfinite(cut)):
        raise DomainError("cut must be positive and finite")

    # Truncation sanity: the wave decays like x^{-Re z/(1-beta)} along the
    # boundary; if the product of that envelope at the cut with the profile
    # mass is not well below tolerance, say so.
    probe = fermi_wave(HalfPlanePoint(cut, 1.0 / cut), z, beta,
                       ToleranceSpec(rel_tol=1e-4, abs_tol=1e-12), normalized=False)
    profile_mass = float(np.sum(np.abs(profile.values(np.linspace(0.0, cut, 257)))) *
                         (cut / 256.0))
    tail_guess = abs(probe.value) * profile_mass
    if tail_guess > 10.0 * tol.abs_tol:
        warnings.warn(
            f"cut = {cut} may truncate ~{tail_guess:.2e} of the overlap",
            TruncationWarning,
            stacklevel=2,
        )

    wave_tol = ToleranceSpec(rel_tol=1e-5, abs_tol=max(tol.abs_tol * 1e-2, 1e-15))
    coarse = ToleranceSpec(rel_tol=3e-3, abs_tol=max(tol.abs_tol, 1e-13))
    inner_evals = 0

    def outer_integrand(xs):
        nonlocal inner_evals
        xs = np.atleast_1d(np.asarray(xs, dtype=np.float64))
        out = np.empty(xs.shape, dtype=np.complex128)
        for i, xv in enumerate(xs):

            def inner(ys):
                nonlocal inner_evals
                vals = np.empty(ys.shape, dtype=np.complex128)
                gv = np.conj(profile.values(xv * ys))
                for j, yv in enumerate(ys):
                    if gv[j] == 0.0:
                        vals[j] = 0.0
                        continue
                    q = envelope_wave(
                        HalfPlanePoint(float(xv), float(yv)), z, beta, FERMI, wave_tol
                    )
                    inner_evals += q.evaluations
                    vals[j] = gv[j] * q.value
                return vals

            res = integrate_finite(inner, 0.0, cut, coarse)
            out[i] = res.value
        return out

    res = integrate_finite(outer_integrand, 0.0, cut, coarse)
    return QuadratureResult(
        value=res.value,
        abs_error_estimate=res.abs_error_estimate,
        evaluations=res.evaluations + inner_evals,
        converged=res.converged,
    )


def orthogonality_reference_scale(
    z: complex,
    profile: EnvelopeSpec = GAUSSIAN,
    tol: ToleranceSpec | None = None,
) -> float:
    """Magnitude the overlap would have absent the zero-condition
    cancellation: int |G(xi)| |osc(xi, 1)| dxi times the gamma-weighted
    scale of z."""
    z = _check_strip_exponent(z)
    tol = tol or ToleranceSpec(rel_tol=1e-4, abs_tol=1e-12)
    osc_tol = tol.scaled(0.1, 0.1)

    def f(xi):
        xi = np.atleast_1d(np.asarray(xi, dtype=np.float64))
        out = np.empty(xi.shape, dtype=np.float64)
        gv = np.abs(profile.values(xi))
        for i, g in enumerate(gv):
            if g == 0.0:
                out[i] = 0.0
                continue
            osc = _scale_factor_integral(float(xi[i]), 1.0, z, osc_tol)
            out[i] = g * abs(osc.value)
        return out

    outer = integrate_semi_infinite(f, tol)
    return abs(outer.value) * _zeta.gamma_weighted_scale(z)


# --------------------------------------------------------------------------
# Grid overlaps of boundary waves against the logistic wave

@dataclass(frozen=True)
class OverlapTrend:
    """Overlap values on a growing family of truncated domains."""

    cuts: tuple[float, ...]
    values: tuple[complex, ...]
    moduli: tuple[float, ...]
    non_increasing: bool


class _InterpolatedScaleProfile:
    """T(c) = int t^{z-1} fermi(t) g(c t^gamma) dt on a precomputed c-grid.

    The boundary wave with scale profile k(t) = t^gamma needs this value at
    every (u, y) pair of its double integral; interpolating it off a
    square-root-spaced table turns an O(grid * quadrature) cost into
    O(table) quadratures plus cheap lookups.
    """

    def __init__(self, z, gamma_exp, envelope, c_max, n=192,
                 tol=ToleranceSpec(rel_tol=1e-7, abs_tol=1e-13)):
        self.evaluations = 0
        roots = np.linspace(0.0, math.sqrt(c_max), n)
        self.c_grid = roots * roots
        vals = np.empty(n, dtype=np.complex128)
        kid = envelope.kernel_id
        for i, c in enumerate(self.c_grid):

            def f(t):
                lt = np.log(t)
                w = kernels.envelope_values(t, kernels.ENV_FERMI)
                if kid is not None:
                    env = kernels.envelope_values(
                        c * np.exp(gamma_exp * lt), kid
                    )
                else:
                    env = envelope.values(c * np.exp(gamma_exp * lt))
                return np.exp((z - 1.0) * lt) * w * env

            res = integrate_semi_infinite(f, tol, singular_exponent=z - 1.0)
            vals[i] = res.value
            self.evaluations += res.evaluations
        self.roots = roots
        self.re = vals.real.copy()
        self.im = vals.imag.copy()

    def __call__(self, c: np.ndarray) -> np.ndarray:
        r = np.sqrt(np.clip(c, 0.0, None))
        return np.interp(r, self.roots, self.re) + 1j * np.interp(
            r, self.roots, self.im
        )


def _trapezoid_overlap(left_vals, right_vals, hx, hy):
    prod = np.conj(left_vals) * right_vals
    wx = np.ones(prod.shape[0])
    wx[0] = wx[-1] = 0.5
    wy = np.ones(prod.shape[1])
    wy[0] = wy[-1] = 0.5
    return complex(np.sum(prod * wx[:, None] * wy[None, :]) * hx * hy)


def eigen_orthogonality(
    z: complex,
    theta: complex,
    beta: float = 0.5,
    gamma_exponent: float = 0.5,
    envelope: EnvelopeSpec = EXPONENTIAL,
    cut_ladder: tuple[float, ...] = (4.0, 8.0, 16.0),
    resolution: int = 48,
    tol: ToleranceSpec | None = None,
) -> OverlapTrend:
    """Overlap of a boundary wave (spectral value from theta) against the
    logistic wave (spectral value from z) on growing truncated domains.

    For a non-conjugate spectral pair whose waves both decay fast enough,
    the overlap sinks towards zero as the domain grows; the returned trend
    records whether the moduli are (weakly) non-increasing.  Neither wave
    family is guaranteed square-integrable, so growth over the scanned cuts
    is a legitimate outcome: it is reported through the ``non_increasing``
    flag and a :class:`NonDecayingTrend` warning, never raised.  A pair
    whose spectral values conjugate onto each other is rejected: the
    statement is empty there.
    """
    z = _check_strip_exponent(z)
    theta = _check_interval_exponent(theta)
    beta = _check_beta(beta)
    lam_right = -1j * (z - 0.5)
    lam_left = -1j * (theta - 0.5)
    if abs(lam_left.conjugate() - lam_right) < 1e-6:
        raise DomainError(
            "spectral values are conjugate within 1e-6; the overlap trend "
            "is uninformative for such a pair"
        )
    if len(cut_ladder) < 2 or any(
        b <= a for a, b in zip(cut_ladder, cut_ladder[1:])
    ):
        raise DomainError("cut_ladder must be strictly increasing, length >= 2")
    if resolution < 8:
        raise DomainError("resolution must be at least 8")
    tol = tol or ToleranceSpec(rel_tol=1e-5, abs_tol=1e-12)

    b_max = beta**beta * (1.0 - beta) ** (1.0 - beta)
    c_max = max(cut_ladder) * b_max * 1.0000001
    # The boundary wave's outer t-integral carries exponent theta, matching
    # the spectral value it contributes to the overlap.
    profile = _InterpolatedScaleProfile(theta, gamma_exponent, envelope, c_max)

    wave_tol = ToleranceSpec(rel_tol=1e-5, abs_tol=1e-13)
    u_tol = ToleranceSpec(rel_tol=1e-6, abs_tol=1e-13)

    def boundary_value(xv: float, yv: float) -> complex:
        def f(u):
            lu = np.log(u)
            lv = np.log(1.0 - u)
            cc = yv * np.exp(beta * lu + (1.0 - beta) * lv)
            return (
                np.exp((theta - 1.0) * lu - theta * lv - 1j * (xv * yv) * u)
                * profile(cc)
            )

        def f_dist(v):
            # Distance form for the right-end singularity (v = 1 - u).
            lu = np.log1p(-v)
            lv = np.log(v)
            cc = yv * np.exp(beta * lu + (1.0 - beta) * lv)
            return (
                np.exp((theta - 1.0) * lu - theta * lv - 1j * (xv * yv) * (1.0 - v))
                * profile(cc)
            )

        res = integrate_finite(
            f, 0.0, 1.0, u_tol,
            singular_exponent_left=theta - 1.0,
            singular_exponent_right=-theta,
            right_distance_form=f_dist,
        )
        return res.value

    cuts = tuple(float(c) for c in cut_ladder)
    values = []
    for cut in cuts:
        nx = 2 * resolution + 1
        ny = resolution + 1
        xs = np.linspace(-cut, cut, nx)
        ys = np.linspace(0.0, cut, ny)
        left = np.empty((nx, ny), dtype=np.complex128)
        right = np.empty((nx, ny), dtype=np.complex128)
        for i, xv in enumerate(xs):
            for j, yv in enumerate(ys):
                left[i, j] = boundary_value(float(xv), float(yv))
                right[i, j] = fermi_wave(
                    HalfPlanePoint(float(xv), float(yv)), z, beta, wave_tol,
                    normalized=False,
                ).value
        values.append(_trapezoid_overlap(left, right, xs[1] - xs[0], ys[1] - ys[0]))
    moduli = tuple(abs(v) for v in values)
    non_increasing = all(
        m2 <= m1 * 1.05 + 1e-30 for m1, m2 in zip(moduli, moduli[1:])
    )
    if not non_increasing:
        warnings.warn(
            "overlap moduli grew over the cut ladder; the wave bulk may lie "
            "beyond the largest cut",
            NonDecayingTrend,
            stacklevel=2,
        )
    return OverlapTrend(
        cuts=cuts, values=tuple(values), moduli=moduli,
        non_increasing=non_increasing,
    )


def self_overlap_trend(
    z: complex,
    beta: float = 0.5,
    cut_ladder: tuple[float, ...] = (4.0, 8.0, 16.0),
    resolution: int = 48,
) -> OverlapTrend:
    """<W|W> of the raw logistic wave on growing truncated domains.

    ``non_increasing`` here reports whether the *increments* shrink as the
    cut doubles — the signature of a converging norm.  In practice the
    large-y strips keep contributing at every octave, so the increments
    often fail to shrink over reachable cuts; that outcome is reported (a
    :class:`NonDecayingTrend` warning plus the flag), not raised, because
    whether this norm is finite at all is exactly the open question the
    trend is meant to illuminate.
    """
    z = _check_strip_exponent(z)
    beta = _check_beta(beta)
    if len(cut_ladder) < 2:
        raise DomainError("cut_ladder needs at least two entries")
    wave_tol = ToleranceSpec(rel_tol=1e-5, abs_tol=1e-13)
    cuts = tuple(float(c) for c in cut_ladder)
    values = []
    for cut in cuts:
        nx = 2 * resolution + 1
        ny = resolution + 1
        xs = np.linspace(-cut, cut, nx)
        ys = np.linspace(0.0, cut, ny)
        field = np.empty((nx, ny), dtype=np.complex128)
        for i, xv in enumerate(xs):
            for j, yv in enumerate(ys):
                field[i, j] = fermi_wave(
                    HalfPlanePoint(float(xv), float(yv)), z, beta, wave_tol,
                    normalized=False,
                ).value
        values.append(_trapezoid_overlap(field, field, xs[1] - xs[0], ys[1] - ys[0]))
    moduli = tuple(abs(v) for v in values)
    increments = [abs(b - a) for a, b in zip(values, values[1:])]
    shrinking = all(i2 <= i1 * 0.9 + 1e-30 for i1, i2 in zip(increments, increments[1:]))
    if len(increments) < 2:
        shrinking = True
    if not shrinking:
        warnings.warn(
            "self-overlap increments did not shrink over the cut ladder; "
            "the norm has not plateaued within the scanned domain",
            NonDecayingTrend,
            stacklevel=2,
        )
    return OverlapTrend(
        cuts=cuts, values=tuple(values), moduli=moduli, non_increasing=shrinking
    )


# --------------------------------------------------------------------------
# Derivative recurrence and decay probes

def derivative_recurrence_residual(
    p: HalfPlanePoint,
    z: complex,
    beta: float = 0.5,
    steps: tuple[float, ...] = (0.02, 0.01, 0.005),
    tol: ToleranceSpec | None = None,
) -> ResidualReport:
    """Ladder residuals of  d/dx W_z = i W_{z + 1 - beta}.

    Differentiating the wave integral in x pulls down i t^{1-beta}, which
    shifts the exponent: the x-derivative of the raw wave at z equals i
    times the raw wave at z + (1 - beta).  Central differences across the
    step ladder must converge to that identity at second order until the
    quadrature noise floor."""
    z = _check_strip_exponent(z)
    beta = _check_beta(beta)
    if len(steps) < 3 or any(b >= a for a, b in zip(steps, steps[1:])):
        raise DomainError("steps must be strictly decreasing, length >= 3")
    tol = tol or ToleranceSpec(rel_tol=1e-10, abs_tol=1e-15)
    shifted = complex(z) + (1.0 - beta)
    reference = 1j * envelope_wave(p, shifted, beta, FERMI, tol).value

    values = {}

    def wave_at(xv: float) -> complex:
        if xv not in values:
            values[xv] = envelope_wave(
                HalfPlanePoint(xv, p.y), z, beta, FERMI, tol
            ).value
        return values[xv]

    residuals = []
    scale = abs(wave_at(p.x))
    for h in steps:
        diff = (wave_at(p.x + h) - wave_at(p.x - h)) / (2.0 * h)
        residuals.append(abs(diff - reference))
    noise = tol.target(scale) / min(steps)
    return estimate_order(list(steps), residuals, noise_floor=noise)


@dataclass(frozen=True)
class DecayProbe:
    """Measured modulus decay of the raw logistic wave along a ray."""

    ray: str
    abscissae: tuple[float, ...]
    moduli: tuple[float, ...]
    fitted_slope: float
    exponent_bound: float
    envelope_constant: float


_RAYS = ("y", "x", "xy")


def decay_probe(
    z: complex,
    beta: float = 0.5,
    ray: str = "y",
    samples: int = 12,
    start: float = 5.0,
    decades: float = 2.0,
    tol: ToleranceSpec | None = None,
) -> DecayProbe:
    """Sample |W| geometrically along a coordinate ray and fit the decay.

    Rays: ``'y'`` probes (0, c) against the bound c^{-Re z / beta};
    ``'x'`` probes (c, 0) against c^{-Re z / (1-beta)}; ``'xy'`` probes
    (sqrt c, sqrt c) against (xy)^{-Re z} = c^{-Re z}.  The fitted
    log-log slope should not decay slower than the bound (tests allow a
    small fitting margin); the envelope constant is max |W| * c^{bound}.
    """
    z = _check_strip_exponent(z)
    beta = _check_beta(beta)
    if ray not in _RAYS:
        raise DomainError(f"ray must be one of {_RAYS}")
    if samples < 5:
        raise DomainError("at least 5 samples are needed for a slope")
    if not (start > 0 and decades > 0):
        raise DomainError("start and decades must be positive")
    if ray == "y" and beta == 0.0:
        raise DomainError("the y-ray bound degenerates at beta = 0")
    if ray == "x" and beta == 1.0:
        raise DomainError("the x-ray bound degenerates at beta = 1")
    tol = tol or ToleranceSpec(rel_tol=1e-7, abs_tol=1e-13)

    cs = np.geomspace(start, start * 10.0**decades, samples)
    moduli = []
    for c in cs:
        if ray == "y":
            pt = HalfPlanePoint(0.0, float(c))
        elif ray == "x":
            pt = HalfPlanePoint(float(c), 0.0)
        else:
            r = math.sqrt(float(c))
            pt = HalfPlanePoint(r, r)
        moduli.append(abs(envelope_wave(pt, z, beta, FERMI, tol).value))
    lx = np.log(cs)
    ly = np.log(np.maximum(moduli, 1e-300))
    slope = float(np.polyfit(lx, ly, 1)[0])
    if ray == "y":
        bound = z.real / beta
    elif ray == "x":
        bound = z.real / (1.0 - beta)
    else:
        bound = z.real
    constant = float(np.max(np.asarray(moduli) * cs**bound))
    return DecayProbe(
        ray=ray,
        abscissae=tuple(float(c) for c in cs),
        moduli=tuple(float(m) for m in moduli),
        fitted_slope=slope,
        exponent_bound=bound,
        envelope_constant=constant,
    )
