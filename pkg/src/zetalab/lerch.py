"""Lerch-type sums  sum_{n>=0} xi^n (eta+n)^{-z}  by two independent routes.

The series route sums blocks of terms with a proven tail bound (plus
iterated-averaging acceleration when |xi| is close to 1 and the terms
rotate in phase); the integral route evaluates

    (1/Gamma(z)) * int_0^inf  t^{z-1} e^{-eta t} / (1 - xi e^{-t}) dt

through the adaptive engine.  The two share no code beyond the kernels'
elementary functions, so their agreement is a genuine cross-check.

Also provided: finite-difference residuals for the characteristic PDE

    z*P + eta * dP/deta + xi * d2P/(dxi deta) = 0,

the one-parameter family of substitutions that map solutions to solutions,
and the split into even/odd parts (the "duplication" identities).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import _kernels as kernels
from .errors import DomainError, MarginError, SlowConvergence
from .numerics.gamma import gamma
from .numerics.quadrature import OscillationHint, integrate_semi_infinite
from .numerics.richardson import estimate_order
from .numerics.types import ResidualReport, ToleranceSpec

__all__ = [
    "LerchArgs",
    "duplication_identity_residuals",
    "lerch_integral",
    "lerch_pde_residual",
    "lerch_series",
    "lerch_symmetry_check",
]

_TERM_LIMIT = 200_000
_BLOCK = 64

_SERIES_DEFAULT = ToleranceSpec(rel_tol=1e-12, abs_tol=1e-15)
_INTEGRAL_DEFAULT = ToleranceSpec(rel_tol=1e-10, abs_tol=1e-14)


@dataclass(frozen=True)
class LerchArgs:
    """Arguments (xi, z, eta) of the sum  sum xi^n (eta+n)^{-z}.

    Structural domain: |xi| <= 1 with xi bounded away from 1 (the branch
    point), and Re(eta) > 0 so that every term and the integral kernel use
    the principal branch without crossings.
    """

    xi: complex
    z: complex
    eta: complex

    def __post_init__(self):
        for name, v in (("xi", self.xi), ("z", self.z), ("eta", self.eta)):
            v = complex(v)
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise DomainError(f"{name} must be finite")
        if abs(self.xi) > 1.0 + 1e-15:
            raise DomainError(f"|xi| <= 1 required, got |xi| = {abs(self.xi)}")
        if abs(self.xi - 1.0) <= 1e-12:
            raise DomainError("xi = 1 is the branch point; not supported")
        if complex(self.eta).real <= 0.0:
            raise DomainError(f"Re(eta) > 0 required, got eta = {self.eta}")


def _series_tail_bound(axi: float, sigma: float, eta_re: float, n_next: int) -> float:
    """Upper bound on |sum_{n >= n_next} xi^n (eta+n)^{-z}|.

    Uses |eta+n| >= Re(eta) + n and, for sigma < 0, the global inequality
    (a+m)^s <= a^s e^{s m / a}; returns inf while the bound is not yet
    contractive.
    """
    a = eta_re + n_next
    if a <= 0.0:
        return math.inf
    if axi >= 1.0 - 1e-12:
        # On the unit circle the caller has already required sigma > 1.
        if sigma <= 1.0:
            return math.inf
        return a ** (1.0 - sigma) / (sigma - 1.0)
    lead = axi**n_next * a ** (-sigma)
    if sigma >= 0.0:
        return lead / (1.0 - axi)
    growth = axi * math.exp(-sigma / a)
    if growth >= 1.0:
        return math.inf
    return lead / (1.0 - growth)


def _euler_resum(partials: list[complex]) -> tuple[complex, float]:
    row = list(partials)
    est = row[-1]
    delta = abs(est)
    while len(row) > 1:
        row = [0.5 * (row[i] + row[i + 1]) for i in range(len(row) - 1)]
        new_est = row[-1]
        delta = abs(new_est - est)
        est = new_est
    return est, delta


def lerch_series(args: LerchArgs, tol: ToleranceSpec | None = None) -> complex:
    """Direct summation with tail bound (and acceleration near |xi| = 1)."""
    tol = tol or _SERIES_DEFAULT
    xi, z, eta = complex(args.xi), complex(args.z), complex(args.eta)
    axi = abs(xi)
    on_circle = axi >= 1.0 - 1e-12
    if on_circle and z.real <= 1.0:
        raise DomainError(
            "on |xi| = 1 the series converges absolutely only for Re z > 1"
        )
    try_accel = axi > 0.9 and not on_circle

    total = 0.0 + 0.0j
    partials: list[complex] = []
    n0 = 0
    while n0 < _TERM_LIMIT:
        block = kernels.lerch_terms(xi, z.real, z.imag, eta, n0, _BLOCK)
        total += complex(block.sum())
        partials.append(total)
        n0 += _BLOCK
        eff = tol.target(abs(total))
        bound = _series_tail_bound(axi, z.real, eta.real, n0)
        if bound <= eff:
            return total
        if try_accel and len(partials) >= 8:
            est, delta = _euler_resum(partials[-24:])
            if delta <= 0.5 * tol.target(abs(est)):
                return est
    raise SlowConvergence(
        f"series still above tolerance after {_TERM_LIMIT} terms "
        f"(|xi| = {axi:.6g})",
        partial=total,
    )


def lerch_integral(args: LerchArgs, tol: ToleranceSpec | None = None) -> complex:
    """Integral route; needs Re z > 0 on top of the structural domain."""
    tol = tol or _INTEGRAL_DEFAULT
    xi, z, eta = complex(args.xi), complex(args.z), complex(args.eta)
    if z.real <= 0.0:
        raise DomainError(f"integral route needs Re z > 0, got z = {z}")
    hint = None
    if abs(eta.imag) > 1e-12:
        hint = OscillationHint(rate=-eta.imag, power=1.0)
    res = integrate_semi_infinite(
        lambda t: kernels.lerch_integrand(t, z.real, z.imag, xi, eta),
        tol,
        oscillation=hint,
        singular_exponent=z - 1.0,
    )
    return res.value / gamma(z)


# --------------------------------------------------------------------------
# PDE residuals on real slices

_LADDER_FACTORS = (1.0, 0.5, 0.25)


def _require_real_slice(args: LerchArgs):
    if abs(complex(args.xi).imag) > 1e-14 or abs(complex(args.eta).imag) > 1e-14:
        raise DomainError("PDE stencils are taken along real xi and eta only")


def _check_margins(xi: float, eta: float, reach: float):
    if not (xi - reach > 0.0 and xi + reach < 1.0):
        raise MarginError(
            f"xi = {xi} needs clearance {reach:.3g} inside (0, 1) for the stencil"
        )
    if not eta - reach > 0.0:
        raise MarginError(
            f"eta = {eta} needs clearance {reach:.3g} above 0 for the stencil"
        )


def _pde_residual_at(evaluate, xi: float, eta: float, z: complex, h: float) -> float:
    corner = (
        evaluate(xi + h, eta + h)
        - evaluate(xi + h, eta - h)
        - evaluate(xi - h, eta + h)
        + evaluate(xi - h, eta - h)
    ) / (4.0 * h * h)
    d_eta = (evaluate(xi, eta + h) - evaluate(xi, eta - h)) / (2.0 * h)
    center = evaluate(xi, eta)
    return abs(z * center + eta * d_eta + xi * corner)


def lerch_pde_residual(
    args: LerchArgs, step: float = 0.02, tol: ToleranceSpec | None = None
) -> ResidualReport:
    """Residual ladder of the characteristic PDE at (xi, eta), steps
    {step, step/2, step/4}.  Interior clearance of 4*step is required."""
    _require_real_slice(args)
    if not (step > 0 and math.isfinite(step)):
        raise DomainError("step must be positive")
    xi = complex(args.xi).real
    eta = complex(args.eta).real
    z = complex(args.z)
    _check_margins(xi, eta, 4.0 * step)
    tol = tol or ToleranceSpec(rel_tol=1e-13, abs_tol=1e-16)

    def evaluate(a, b):
        return lerch_series(LerchArgs(xi=a, z=z, eta=b), tol)

    spacings = [step * f for f in _LADDER_FACTORS]
    residuals = [_pde_residual_at(evaluate, xi, eta, z, h) for h in spacings]
    return estimate_order(spacings, residuals)


def lerch_symmetry_check(
    args: LerchArgs,
    k: float,
    b: complex,
    theta: complex,
    step: float = 0.02,
    tol: ToleranceSpec | None = None,
) -> ResidualReport:
    """PDE residual ladder for the transformed candidate

        C(xi, eta) = xi^theta * P(b xi^k, (eta+theta)/k)

    which the substitution family maps back onto a PDE solution.  The
    residual of C under the *same* operator (same z) must therefore
    converge to zero at second order, and this check verifies exactly that
    without assuming it.
    """
    _require_real_slice(args)
    if not (math.isfinite(k) and k != 0.0):
        raise DomainError("k must be a nonzero real number")
    if b == 0:
        raise DomainError("b must be nonzero")
    if not (step > 0 and math.isfinite(step)):
        raise DomainError("step must be positive")
    xi = complex(args.xi).real
    eta = complex(args.eta).real
    z = complex(args.z)
    theta = complex(theta)
    b = complex(b)
    _check_margins(xi, eta, 4.0 * step)
    tol = tol or ToleranceSpec(rel_tol=1e-13, abs_tol=1e-16)

    # Every stencil argument must land inside the transformed domain.
    reach = 4.0 * step
    for probe in (xi - reach, xi + reach):
        if abs(b) * probe**k >= 1.0 - 1e-9:
            raise DomainError(
                f"|b xi^k| reaches {abs(b) * probe ** k:.6g} at the stencil edge; "
                "the inner argument must stay inside the unit disk"
            )
    for probe in (eta - reach, eta + reach):
        if ((probe + theta) / k).real <= 0.0:
            raise DomainError(
                "(eta + theta)/k must keep a positive real part across the stencil"
            )

    def evaluate(a, e):
        inner = LerchArgs(xi=b * a**k, z=z, eta=(e + theta) / k)
        return cmath.exp(theta * math.log(a)) * lerch_series(inner, tol)

    spacings = [step * f for f in _LADDER_FACTORS]
    residuals = [_pde_residual_at(evaluate, xi, eta, z, h) for h in spacings]
    return estimate_order(spacings, residuals)


def duplication_identity_residuals(
    args: LerchArgs, tol: ToleranceSpec | None = None
) -> tuple[float, float]:
    """Relative residuals of the even/odd splitting identities

        P(xi) + P(-xi) = 2^{1-z} P(xi^2, eta/2)
        P(xi) - P(-xi) = 2^{1-z} xi P(xi^2, (eta+1)/2)

    (z fixed throughout).  Requires xi^2 to stay inside the structural
    domain, which excludes |xi| = 1.
    """
    xi, z, eta = complex(args.xi), complex(args.z), complex(args.eta)
    if abs(xi) >= 1.0 - 1e-12:
        raise DomainError("duplication needs |xi| < 1 so that xi^2 != 1")
    tol = tol or _SERIES_DEFAULT
    p_plus = lerch_series(args, tol)
    p_minus = lerch_series(LerchArgs(xi=-xi, z=z, eta=eta), tol)
    fac = cmath.exp((1.0 - z) * math.log(2.0))
    even = fac * lerch_series(LerchArgs(xi=xi * xi, z=z, eta=eta / 2.0), tol)
    odd = fac * xi * lerch_series(
        LerchArgs(xi=xi * xi, z=z, eta=(eta + 1.0) / 2.0), tol
    )
    lhs_even = p_plus + p_minus
    lhs_odd = p_plus - p_minus
    r_even = abs(lhs_even - even) / max(abs(lhs_even), abs(even), 1e-30)
    r_odd = abs(lhs_odd - odd) / max(abs(lhs_odd), abs(odd), 1e-30)
    return r_even, r_odd
