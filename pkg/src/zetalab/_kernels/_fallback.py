"""Pure-numpy implementations of the evaluation kernels.

Every function here has a compiled twin in ``_core.pyx`` with identical
semantics; the package selects one implementation at import time (see the
package ``__init__``).  Keep the two in lockstep: the test suite asserts
agreement on randomized inputs.

Array arguments are one-dimensional float64 abscissae; returns are
complex128 arrays of the same length unless noted.  Scalar parameters are
passed as plain Python numbers.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

BACKEND_NAME = "fallback"

ENV_FERMI = 0
ENV_EXPONENTIAL = 1
ENV_GAUSSIAN = 2


def eta_terms(z: complex, n: int) -> complex:
    """Accelerated alternating sum  sum_{k>=1} (-1)^{k-1} k^{-z}.

    Chebyshev-style acceleration (Cohen / Rodriguez Villegas / Zagier):
    with n terms the error shrinks like (3+sqrt(8))^{-n} times a factor
    polynomial in |Im z|, so ~40 terms give full double precision on the
    real axis and n is grown linearly with |Im z| by the caller.
    """
    zr = float(z.real)
    zi = float(z.imag)
    d = (3.0 + math.sqrt(8.0)) ** n
    d = (d + 1.0 / d) / 2.0
    b = -1.0
    c = -d
    coeff = np.empty(n, dtype=np.float64)
    for k in range(n):
        c = b - c
        coeff[k] = c
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0))
    kk = np.arange(1, n + 1, dtype=np.float64)
    lk = np.log(kk)
    terms = coeff * np.exp(-zr * lk) * np.exp(-1j * zi * lk)
    return complex(terms.sum() / d)


def _fermi_real(xi: np.ndarray) -> np.ndarray:
    """1/(1+e^xi) for real xi, overflow-safe on both signs."""
    out = np.empty_like(xi)
    pos = xi > 0
    e = np.exp(-xi[pos])
    out[pos] = e / (1.0 + e)
    out[~pos] = 1.0 / (1.0 + np.exp(xi[~pos]))
    return out


def envelope_values(xi: np.ndarray, kind: int) -> np.ndarray:
    """Builtin envelope profiles evaluated on a real array."""
    if kind == ENV_FERMI:
        return _fermi_real(xi)
    if kind == ENV_EXPONENTIAL:
        return np.exp(-xi)
    if kind == ENV_GAUSSIAN:
        return np.exp(-xi * xi)
    raise ValueError(f"unknown envelope kind {kind}")


def wave_integrand(
    t: np.ndarray,
    zr: float,
    zi: float,
    beta: float,
    x: float,
    y: float,
    env_kind: int,
) -> np.ndarray:
    """t^{z-1} e^{i x t^{1-beta}} g(t + y t^beta) on t > 0."""
    lt = np.log(t)
    xi = t + y * np.exp(beta * lt)
    phase = zi * lt + x * np.exp((1.0 - beta) * lt)
    mod = np.exp((zr - 1.0) * lt)
    return mod * np.exp(1j * phase) * envelope_values(xi, env_kind)


def complex_envelope_values(s: np.ndarray, kind: int) -> np.ndarray:
    """Builtin envelope profiles on a complex array.

    Used on rotated integration rays; arguments stay in the sector where
    each profile decays, so only the fermi profile needs the two-branch
    overflow guard.
    """
    if kind == ENV_FERMI:
        out = np.empty(s.shape, dtype=np.complex128)
        pos = s.real > 0
        e = np.exp(-s[pos])
        out[pos] = e / (1.0 + e)
        out[~pos] = 1.0 / (1.0 + np.exp(s[~pos]))
        return out
    if kind == ENV_EXPONENTIAL:
        return np.exp(-s)
    if kind == ENV_GAUSSIAN:
        return np.exp(-s * s)
    raise ValueError(f"unknown envelope kind {kind}")


def rotated_wave_integrand(
    rho: np.ndarray,
    zr: float,
    zi: float,
    beta: float,
    x: float,
    y: float,
    theta: float,
    env_kind: int,
) -> np.ndarray:
    """Wave integrand on the rotated ray tau = rho e^{i sgn(x) theta}.

    After the substitution tau = t^{1-beta} the wave reads

        (1/(1-beta)) tau^{Z-1} e^{i x tau} g(tau^q + y tau^{q-1}),

    Z = z/(1-beta), q = 1/(1-beta).  This kernel returns the rho-dependent
    factor  rho^{Z-1} e^{i x tau} g(...); the constant e^{i alpha Z}/(1-beta)
    stays with the caller.  On the ray the phase factor decays like
    e^{-|x| rho sin(theta)} instead of oscillating.
    """
    q = 1.0 / (1.0 - beta)
    zz = complex(zr, zi) * q
    alpha = math.copysign(theta, x)
    lr = np.log(rho)
    tau = rho * cmath.exp(1j * alpha)
    s = np.exp(q * lr) * cmath.exp(1j * (q * alpha))
    if y != 0.0:
        s = s + y * (np.exp((q - 1.0) * lr) * cmath.exp(1j * ((q - 1.0) * alpha)))
    g = complex_envelope_values(s, env_kind)
    return np.exp((zz - 1.0) * lr) * np.exp(1j * (x * tau)) * g


def rotated_fermi_integrand(
    s: np.ndarray, zr: float, zi: float, ca: float, sa: float
) -> np.ndarray:
    """s^{z-1} / (1 + exp(s e^{i alpha})) with e^{i alpha} = ca + i sa.

    The complex logistic factor is evaluated overflow-safely: for
    Re(arg) > 0 the equivalent form e^{-arg}/(1+e^{-arg}) is used.
    """
    arg = s * ca + 1j * (s * sa)
    out = np.empty(s.shape, dtype=np.complex128)
    pos = arg.real > 0
    e = np.exp(-arg[pos])
    out[pos] = e / (1.0 + e)
    out[~pos] = 1.0 / (1.0 + np.exp(arg[~pos]))
    ls = np.log(s)
    out *= np.exp((zr - 1.0) * ls) * np.exp(1j * (zi * ls))
    return out


def lerch_integrand(
    t: np.ndarray, zr: float, zi: float, xi: complex, eta: complex
) -> np.ndarray:
    """t^{z-1} e^{-eta t} / (1 - xi e^{-t}) on t > 0."""
    lt = np.log(t)
    emt = np.exp(-t)
    num = np.exp((zr - 1.0) * lt - eta.real * t) * np.exp(
        1j * (zi * lt - eta.imag * t)
    )
    return num / (1.0 - xi * emt)


def lerch_terms(
    xi: complex, zr: float, zi: float, eta: complex, n0: int, count: int
) -> np.ndarray:
    """Terms xi^n (eta+n)^{-z} for n = n0 .. n0+count-1."""
    n = np.arange(n0, n0 + count, dtype=np.float64)
    base = eta + n
    lb = np.log(base.astype(np.complex128))
    zz = complex(zr, zi)
    vals = np.exp(-zz * lb)
    if xi == 0:
        pw = np.zeros(count, dtype=np.complex128)
        if n0 == 0:
            pw[0] = 1.0
    else:
        pw = np.exp(n * cmath.log(xi))
    return pw * vals


def scale_factor_integrand(
    s: np.ndarray, zr: float, zi: float, x: float, y: float
) -> np.ndarray:
    """(1/s) e^{i x s} (1 + y/s)^{-z} on s > 0.

    The logarithm of (1 + y/s) is formed as log(s+y) - log(s) when y/s is
    large (avoids overflow of the ratio) and as log1p(y/s) otherwise.
    """
    out_log = np.empty_like(s)
    ratio_small = s > y
    out_log[ratio_small] = np.log1p(y / s[ratio_small])
    big = ~ratio_small
    out_log[big] = np.log(s[big] + y) - np.log(s[big])
    zz = complex(zr, zi)
    return np.exp(-zz * out_log + 1j * (x * s)) / s


def interval_integrand(
    u: np.ndarray,
    thr: float,
    thi: float,
    a: float,
    c: float,
    beta: float,
    env_kind: int,
    variant: int,
) -> np.ndarray:
    """Weighted envelope integrand on the unit interval or the half line.

    variant 0:  u^{th-1} (1-u)^{-th} e^{-i a u} g(c u^beta (1-u)^{1-beta})
                on 0 < u < 1
    variant 1:  u^{th-1} (1+u)^{-th} e^{+i a u} g(c u^beta (1+u)^{1-beta})
                on u > 0
    variant 2:  variant 0 reparametrized by the distance to the right
                endpoint — the argument holds v = 1 - u, so the u -> 1
                singularity sits at v -> 0 and is formed from log(v)
                directly instead of log(1 - u), which underflows to
                log(0) once u rounds onto 1.
    """
    if variant == 2:
        lu = np.log1p(-u)  # log of the original variable 1 - v
        lv = np.log(u)  # log of the endpoint distance v
        xi = c * np.exp(beta * lu + (1.0 - beta) * lv)
        mod = np.exp((thr - 1.0) * lu - thr * lv)
        phase = thi * lu - thi * lv - a * (1.0 - u)
        return mod * np.exp(1j * phase) * envelope_values(xi, env_kind)
    lu = np.log(u)
    if variant == 0:
        lv = np.log(1.0 - u)
        sign = -1.0
    else:
        lv = np.log1p(u)
        sign = 1.0
    xi = c * np.exp(beta * lu + (1.0 - beta) * lv)
    mod = np.exp((thr - 1.0) * lu - thr * lv)
    phase = thi * lu - thi * lv + sign * a * u
    return mod * np.exp(1j * phase) * envelope_values(xi, env_kind)
