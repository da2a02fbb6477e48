"""Riemann zeta on the right half-plane and its critical-line zeros.

Two independent evaluation routes are kept deliberately separate:

* ``zeta`` sums the alternating (eta) series with Chebyshev-style
  acceleration and divides by the prefactor ``1 - 2^{1-z}``;
* ``zeta_via_integral`` evaluates the gamma-weighted zero-condition
  integral  ``int_0^inf t^{z-1} / (1 + e^t) dt``  and converts back.

Cross-checking one against the other exercises completely disjoint code
paths, which is the point — do not merge them.

The integral route rotates the contour by ``t -> s e^{i a}`` once the
imaginary part is large: on the real axis the integrand oscillates in
``log t`` near the origin and the value sits exponentially deep below the
integrand scale (factor ``e^{-pi |Im z| / 2}``), while on the rotated ray
the same value emerges at full relative accuracy from a few thousand
samples.  The rotation stays clear of the kernel poles at ``i pi (2k+1)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import _kernels as kernels
from .errors import DomainError, PoleError, PrefactorSingular, WindowTooWide
from .numerics.gamma import gamma
from .numerics.quadrature import integrate_semi_infinite
from .numerics.types import QuadratureResult, ToleranceSpec

__all__ = [
    "SpectralParam",
    "ZetaZero",
    "find_zeros",
    "functional_equation_residual",
    "gamma_weighted_scale",
    "zero_condition_integral",
    "zeta",
    "zeta_via_integral",
]

_LN2 = math.log(2.0)

# Largest |Im z| the accelerated series is certified for; beyond this the
# acceleration coefficients grow towards double-precision overflow.
_MAX_IMAG = 120.0

# Contour rotation angle for the integral route.  A quarter-radian short of
# pi/2 keeps exponential decay along the ray (cos of the angle stays
# positive) while converting almost the whole phase spiral into a real
# decay factor pulled out analytically.
_ROTATION_MARGIN = 0.25
_ROTATION_THRESHOLD = 4.0


@dataclass(frozen=True)
class SpectralParam:
    """A point z written as z = 1/2 + i*lam.

    ``lam`` is real exactly when z lies on the critical line; the
    imaginary part of ``lam`` measures the distance from it.
    """

    z: complex
    lam: complex

    @classmethod
    def from_z(cls, z: complex) -> "SpectralParam":
        z = complex(z)
        return cls(z=z, lam=-1j * (z - 0.5))

    @classmethod
    def from_lambda(cls, lam: complex) -> "SpectralParam":
        lam = complex(lam)
        return cls(z=0.5 + 1j * lam, lam=lam)

    def __post_init__(self):
        if abs(self.z - (0.5 + 1j * self.lam)) > 1e-12 * (1.0 + abs(self.z)):
            raise DomainError("z and lam disagree; use from_z or from_lambda")

    @property
    def on_critical_line(self) -> bool:
        return abs(self.lam.imag) <= 1e-12 * (1.0 + abs(self.lam.real))


@dataclass(frozen=True)
class ZetaZero:
    """A critical-line zero: 1-based index, ordinate t, and |zeta| there."""

    index: int
    ordinate: float
    residual: float


def _prefactor(z: complex) -> complex:
    """1 - 2^{1-z}, guarded against its zeros on Re z = 1."""
    pref = 1.0 - cmath.exp((1.0 - z) * _LN2)
    if abs(pref) <= 1e-8:
        raise PrefactorSingular(
            f"1 - 2^(1-z) = {pref:.3e} is too small to divide by at z = {z}"
        )
    return pref


def _check_argument(z: complex) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("z must be finite")
    if z.real <= 0.0:
        raise DomainError(f"series evaluation needs Re z > 0, got {z}")
    if abs(z - 1.0) < 1e-13:
        raise PoleError("zeta has its pole at z = 1")
    if abs(z.imag) > _MAX_IMAG:
        raise DomainError(f"|Im z| <= {_MAX_IMAG} supported, got {z.imag}")
    return z


def _eta(z: complex) -> complex:
    n = 32 + int(1.2 * abs(z.imag))
    return kernels.eta_terms(z, n)


def zeta(z: complex) -> complex:
    """Riemann zeta for Re z > 0, via the accelerated alternating series."""
    z = _check_argument(z)
    return _eta(z) / _prefactor(z)


def gamma_weighted_scale(z: complex) -> float:
    """|Gamma(z) (1 - 2^{1-z})| — the natural magnitude against which the
    zero-condition integral should be judged."""
    z = complex(z)
    return abs(gamma(z)) * abs(1.0 - cmath.exp((1.0 - z) * _LN2))


def _zero_condition_raw(z: complex, tol: ToleranceSpec) -> QuadratureResult:
    """int_0^inf t^{z-1}/(1+e^t) dt for Re z > 0, rotating when useful."""
    tau = z.imag
    if abs(tau) > _ROTATION_THRESHOLD:
        alpha = math.copysign(math.pi / 2.0 - _ROTATION_MARGIN, tau)
    else:
        alpha = 0.0
    ca = math.cos(alpha)
    sa = math.sin(alpha)
    pref = cmath.exp(1j * alpha * z)
    # On the rotated ray the computed integral is larger than the final
    # value by 1/|pref|, so the absolute tolerance is loosened accordingly.
    tol_ray = ToleranceSpec(
        rel_tol=tol.rel_tol,
        abs_tol=tol.abs_tol / abs(pref),
        max_evaluations=tol.max_evaluations,
    )
    res = integrate_semi_infinite(
        lambda s: kernels.rotated_fermi_integrand(s, z.real, z.imag, ca, sa),
        tol_ray,
        singular_exponent=z - 1.0,
    )
    return QuadratureResult(
        value=res.value * pref,
        abs_error_estimate=res.abs_error_estimate * abs(pref),
        evaluations=res.evaluations,
        converged=res.converged,
    )


def zero_condition_integral(
    z: complex, tol: ToleranceSpec | None = None
) -> QuadratureResult:
    """The gamma-weighted strip integral whose vanishing marks the zeros.

    Equals ``Gamma(z) (1 - 2^{1-z}) zeta(z)`` on the critical strip
    0 < Re z < 1, computed without reference to either factor.  The default
    tolerance resolves the value down to 1e-8 of the gamma-weighted scale,
    tight enough to separate zeros from near-zeros cleanly.
    """
    z = complex(z)
    if not (0.0 < z.real < 1.0):
        raise DomainError(f"the zero condition lives on 0 < Re z < 1, got {z}")
    if abs(z.imag) > _MAX_IMAG:
        raise DomainError(f"|Im z| <= {_MAX_IMAG} supported, got {z.imag}")
    if tol is None:
        tol = ToleranceSpec(
            rel_tol=1e-9, abs_tol=1e-8 * gamma_weighted_scale(z)
        )
    return _zero_condition_raw(z, tol)


def zeta_via_integral(z: complex, tol: ToleranceSpec | None = None) -> complex:
    """Riemann zeta recovered from the zero-condition integral.

    Independent of :func:`zeta` in every ingredient except the gamma
    function.  Supported for Re z > 0 away from z = 1 and the prefactor
    zeros on Re z = 1.
    """
    z = _check_argument(z)
    tol = tol or ToleranceSpec(rel_tol=1e-9, abs_tol=1e-12)
    den = gamma(z) * _prefactor(z)
    tol_integral = ToleranceSpec(
        rel_tol=tol.rel_tol,
        abs_tol=max(tol.abs_tol * abs(den), 5e-324),
        max_evaluations=tol.max_evaluations,
    )
    raw = _zero_condition_raw(z, tol_integral)
    return raw.value / den


def functional_equation_residual(z: complex) -> float:
    """Relative mismatch of the reflection identity at z.

    Compares ``2^{1-z} Gamma(z) zeta(z) cos(pi z / 2)`` with
    ``pi^z zeta(1-z)`` and returns |difference| / max(|side|), both sides
    evaluated through the series route.  Requires 0 < Re z < 1 so both z
    and 1-z stay in series territory.
    """
    z = complex(z)
    if not (0.0 < z.real < 1.0):
        raise DomainError(f"reflection check needs 0 < Re z < 1, got {z}")
    lhs = (
        cmath.exp((1.0 - z) * _LN2)
        * gamma(z)
        * zeta(z)
        * cmath.cos(cmath.pi * z / 2.0)
    )
    rhs = cmath.exp(z * cmath.log(cmath.pi)) * zeta(1.0 - z)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-30)


# --------------------------------------------------------------------------
# Critical-line zero location

# Zeros are scanned for above this ordinate; there are provably none below
# (the first lies near t = 14.13) and the phase asymptotics below it are
# not worth certifying.
_SCAN_FLOOR = 5.0
_SCAN_CEILING = 100.0


def _siegel_phase(t: float) -> float:
    # Asymptotic phase theta(t); the two correction terms keep the error
    # below ~1e-9 for t >= 5, which only rescales the real part used for
    # sign changes and moves no zero.
    return (
        0.5 * t * math.log(t / (2.0 * math.pi))
        - 0.5 * t
        - math.pi / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t**3)
    )


def _hardy_function(t: float) -> float:
    """Real-valued function whose sign changes mark critical-line zeros."""
    rotated = cmath.exp(1j * _siegel_phase(t)) * zeta(0.5 + 1j * t)
    return rotated.real


def find_zeros(
    t_lo: float,
    t_hi: float,
    *,
    scan_step: float = 0.05,
    refine_tol: float = 1e-12,
) -> list[ZetaZero]:
    """Critical-line zeros with ordinates in [t_lo, t_hi].

    Scans the rotated real-valued combination of zeta for sign changes at
    ``scan_step`` resolution, then bisects each bracket down to
    ``refine_tol``.  Indices are global (1-based from the lowest zero), so
    a window [20, 30] correctly labels its first hit as number 2.  Windows
    must satisfy 0 < t_lo < t_hi <= 100; ordinates below 5 are not scanned
    (no zeros exist there).
    """
    if not (math.isfinite(t_lo) and math.isfinite(t_hi)):
        raise DomainError("window endpoints must be finite")
    if not (0.0 < t_lo < t_hi):
        raise DomainError(f"need 0 < t_lo < t_hi, got [{t_lo}, {t_hi}]")
    if t_hi > _SCAN_CEILING:
        raise WindowTooWide(
            f"zero scan is validated only up to t = {_SCAN_CEILING}, got {t_hi}"
        )
    if not (0.0 < scan_step <= 0.25):
        raise DomainError("scan_step must lie in (0, 0.25]")

    start = max(t_lo, _SCAN_FLOOR)
    if start >= t_hi:
        return []

    # Walk from the scan floor so indices come out global.
    t = _SCAN_FLOOR
    f_prev = _hardy_function(t)
    count = 0
    zeros: list[ZetaZero] = []
    while t < t_hi:
        t_next = min(t + scan_step, t_hi)
        f_next = _hardy_function(t_next)
        if f_prev == 0.0:
            f_prev = f_next
            t = t_next
            continue
        if f_prev * f_next < 0.0:
            count += 1
            a, b = t, t_next
            fa = f_prev
            while b - a > refine_tol:
                m = 0.5 * (a + b)
                fm = _hardy_function(m)
                if fm == 0.0:
                    a = b = m
                    break
                if fa * fm < 0.0:
                    b = m
                else:
                    a, fa = m, fm
            ordinate = 0.5 * (a + b)
            if ordinate >= t_lo:
                zeros.append(
                    ZetaZero(
                        index=count,
                        ordinate=ordinate,
                        residual=abs(zeta(0.5 + 1j * ordinate)),
                    )
                )
        f_prev = f_next
        t = t_next
    return zeros
