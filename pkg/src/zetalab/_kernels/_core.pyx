# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled twins of the pure-numpy kernels in ``_fallback``.

Same functions, same guards, same branch structure — only the execution
strategy differs (tight C loops instead of vectorized numpy).  Keep the
two modules in lockstep; the test suite asserts elementwise agreement on
randomized inputs.
"""

import numpy as np

from libc.math cimport atan2, copysign, cos, exp, log, log1p, sin, sqrt

BACKEND_NAME = "core"

ENV_FERMI = 0
ENV_EXPONENTIAL = 1
ENV_GAUSSIAN = 2


cdef inline double complex cexp(double complex z) noexcept:
    cdef double m = exp(z.real)
    return m * cos(z.imag) + 1j * (m * sin(z.imag))


cdef inline double complex clog(double complex z) noexcept:
    cdef double m = z.real * z.real + z.imag * z.imag
    return 0.5 * log(m) + 1j * atan2(z.imag, z.real)


cdef inline double complex _cfermi(double complex s) noexcept:
    # 1/(1 + e^s), overflow-safe on both half planes.
    cdef double complex e
    if s.real > 0:
        e = cexp(-s)
        return e / (1.0 + e)
    return 1.0 / (1.0 + cexp(s))


cdef inline double _rfermi(double xi) noexcept:
    cdef double e
    if xi > 0:
        e = exp(-xi)
        return e / (1.0 + e)
    return 1.0 / (1.0 + exp(xi))


cdef inline double _renvelope(double xi, int kind) noexcept:
    if kind == 0:
        return _rfermi(xi)
    if kind == 1:
        return exp(-xi)
    return exp(-xi * xi)


cdef inline int _check_kind(int kind) except -1:
    if kind < 0 or kind > 2:
        raise ValueError(f"unknown envelope kind {kind}")
    return 0


def eta_terms(z, int n):
    """Accelerated alternating sum  sum_{k>=1} (-1)^{k-1} k^{-z}.

    Chebyshev-style acceleration (Cohen / Rodriguez Villegas / Zagier);
    see the fallback twin for the convergence statement.
    """
    cdef double zr = z.real
    cdef double zi = z.imag
    cdef double d = (3.0 + sqrt(8.0)) ** n
    d = (d + 1.0 / d) / 2.0
    cdef double b = -1.0
    cdef double c = -d
    cdef double complex acc = 0.0
    cdef double lk, m
    cdef Py_ssize_t k
    for k in range(n):
        c = b - c
        lk = log(k + 1.0)
        m = c * exp(-zr * lk)
        acc = acc + (m * cos(-zi * lk) + 1j * (m * sin(-zi * lk)))
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0))
    return complex(acc / d)


def envelope_values(xi, int kind):
    """Builtin envelope profiles evaluated on a real array."""
    _check_kind(kind)
    cdef double[::1] x = np.ascontiguousarray(xi, dtype=np.float64)
    out = np.empty(x.shape[0], dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i
    for i in range(x.shape[0]):
        o[i] = _renvelope(x[i], kind)
    return out


def complex_envelope_values(s, int kind):
    """Builtin envelope profiles on a complex array."""
    _check_kind(kind)
    cdef double complex[::1] sv = np.ascontiguousarray(s, dtype=np.complex128)
    out = np.empty(sv.shape[0], dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef Py_ssize_t i
    cdef double complex si
    for i in range(sv.shape[0]):
        si = sv[i]
        if kind == 0:
            o[i] = _cfermi(si)
        elif kind == 1:
            o[i] = cexp(-si)
        else:
            o[i] = cexp(-si * si)
    return out


def wave_integrand(t, double zr, double zi, double beta, double x, double y,
                   int env_kind):
    """t^{z-1} e^{i x t^{1-beta}} g(t + y t^beta) on t > 0."""
    _check_kind(env_kind)
    cdef double[::1] tv = np.ascontiguousarray(t, dtype=np.float64)
    out = np.empty(tv.shape[0], dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef Py_ssize_t i
    cdef double lt, xi, phase, mod, g
    for i in range(tv.shape[0]):
        lt = log(tv[i])
        xi = tv[i] + y * exp(beta * lt)
        phase = zi * lt + x * exp((1.0 - beta) * lt)
        mod = exp((zr - 1.0) * lt)
        g = _renvelope(xi, env_kind)
        o[i] = (mod * g) * cos(phase) + 1j * ((mod * g) * sin(phase))
    return out


def rotated_wave_integrand(rho, double zr, double zi, double beta, double x,
                           double y, double theta, int env_kind):
    """Wave integrand on the rotated ray tau = rho e^{i sgn(x) theta}.

    Returns the rho-dependent factor rho^{Z-1} e^{i x tau} g(tau^q + y
    tau^{q-1}) with Z = z/(1-beta), q = 1/(1-beta); the constant
    e^{i alpha Z}/(1-beta) stays with the caller.
    """
    _check_kind(env_kind)
    cdef double[::1] rv = np.ascontiguousarray(rho, dtype=np.float64)
    out = np.empty(rv.shape[0], dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef double q = 1.0 / (1.0 - beta)
    cdef double complex zz = (zr + 1j * zi) * q
    cdef double alpha = copysign(theta, x)
    cdef double complex eja = cos(alpha) + 1j * sin(alpha)
    cdef double complex ejqa = cos(q * alpha) + 1j * sin(q * alpha)
    cdef double complex ejq1a = cos((q - 1.0) * alpha) + 1j * sin((q - 1.0) * alpha)
    cdef Py_ssize_t i
    cdef double lr
    cdef double complex tau, s, g
    for i in range(rv.shape[0]):
        lr = log(rv[i])
        tau = rv[i] * eja
        s = exp(q * lr) * ejqa
        if y != 0.0:
            s = s + y * (exp((q - 1.0) * lr) * ejq1a)
        if env_kind == 0:
            g = _cfermi(s)
        elif env_kind == 1:
            g = cexp(-s)
        else:
            g = cexp(-s * s)
        o[i] = cexp((zz - 1.0) * lr) * cexp(1j * (x * tau)) * g
    return out


def rotated_fermi_integrand(s, double zr, double zi, double ca, double sa):
    """s^{z-1} / (1 + exp(s e^{i alpha})) with e^{i alpha} = ca + i sa."""
    cdef double[::1] sv = np.ascontiguousarray(s, dtype=np.float64)
    out = np.empty(sv.shape[0], dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef Py_ssize_t i
    cdef double ls, m
    cdef double complex arg, f
    for i in range(sv.shape[0]):
        arg = sv[i] * ca + 1j * (sv[i] * sa)
        f = _cfermi(arg)
        ls = log(sv[i])
        m = exp((zr - 1.0) * ls)
        o[i] = f * (m * cos(zi * ls) + 1j * (m * sin(zi * ls)))
    return out


def lerch_integrand(t, double zr, double zi, xi, eta):
    """t^{z-1} e^{-eta t} / (1 - xi e^{-t}) on t > 0."""
    cdef double[::1] tv = np.ascontiguousarray(t, dtype=np.float64)
    out = np.empty(tv.shape[0], dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef double complex cxi = xi
    cdef double er = eta.real
    cdef double ei = eta.imag
    cdef Py_ssize_t i
    cdef double lt, emt, m, ph
    for i in range(tv.shape[0]):
        lt = log(tv[i])
        emt = exp(-tv[i])
        m = exp((zr - 1.0) * lt - er * tv[i])
        ph = zi * lt - ei * tv[i]
        o[i] = (m * cos(ph) + 1j * (m * sin(ph))) / (1.0 - cxi * emt)
    return out


def lerch_terms(xi, double zr, double zi, eta, int n0, int count):
    """Terms xi^n (eta+n)^{-z} for n = n0 .. n0+count-1."""
    out = np.empty(count, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef double complex cxi = xi
    cdef double complex ceta = eta
    cdef double complex zz = zr + 1j * zi
    cdef double complex lxi, lb, pw
    cdef Py_ssize_t k
    cdef double n
    if cxi == 0:
        for k in range(count):
            o[k] = 0.0
        if n0 == 0 and count > 0:
            lb = clog(ceta)
            o[0] = cexp(-zz * lb)
        else:
            # xi^n is identically zero for n >= 1.
            pass
        return out
    lxi = clog(cxi)
    for k in range(count):
        n = n0 + k
        lb = clog(ceta + n)
        pw = cexp(n * lxi)
        o[k] = pw * cexp(-zz * lb)
    return out


def scale_factor_integrand(s, double zr, double zi, double x, double y):
    """(1/s) e^{i x s} (1 + y/s)^{-z} on s > 0, overflow-safe in the log."""
    cdef double[::1] sv = np.ascontiguousarray(s, dtype=np.float64)
    out = np.empty(sv.shape[0], dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef double complex zz = zr + 1j * zi
    cdef Py_ssize_t i
    cdef double ol
    for i in range(sv.shape[0]):
        if sv[i] > y:
            ol = log1p(y / sv[i])
        else:
            ol = log(sv[i] + y) - log(sv[i])
        o[i] = cexp(-zz * ol + 1j * (x * sv[i])) / sv[i]
    return out


def interval_integrand(u, double thr, double thi, double a, double c,
                       double beta, int env_kind, int variant):
    """Weighted envelope integrand on the unit interval or the half line.

    variant 0:  u^{th-1} (1-u)^{-th} e^{-i a u} g(c u^beta (1-u)^{1-beta})
                on 0 < u < 1
    variant 1:  u^{th-1} (1+u)^{-th} e^{+i a u} g(c u^beta (1+u)^{1-beta})
                on u > 0
    variant 2:  variant 0 reparametrized by the distance to the right
                endpoint — the argument holds v = 1 - u, so the u -> 1
                singularity is formed from log(v) directly.
    """
    _check_kind(env_kind)
    cdef double[::1] uv = np.ascontiguousarray(u, dtype=np.float64)
    out = np.empty(uv.shape[0], dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef Py_ssize_t i
    cdef double lu, lv, xi, mod, phase, g, sign
    if variant == 2:
        for i in range(uv.shape[0]):
            lu = log1p(-uv[i])
            lv = log(uv[i])
            xi = c * exp(beta * lu + (1.0 - beta) * lv)
            mod = exp((thr - 1.0) * lu - thr * lv)
            phase = thi * lu - thi * lv - a * (1.0 - uv[i])
            g = _renvelope(xi, env_kind)
            o[i] = (mod * g) * cos(phase) + 1j * ((mod * g) * sin(phase))
        return out
    sign = -1.0 if variant == 0 else 1.0
    for i in range(uv.shape[0]):
        lu = log(uv[i])
        if variant == 0:
            lv = log(1.0 - uv[i])
        else:
            lv = log1p(uv[i])
        xi = c * exp(beta * lu + (1.0 - beta) * lv)
        mod = exp((thr - 1.0) * lu - thr * lv)
        phase = thi * lu - thi * lv + sign * a * uv[i]
        g = _renvelope(xi, env_kind)
        o[i] = (mod * g) * cos(phase) + 1j * ((mod * g) * sin(phase))
    return out
