"""Zeta evaluation, the integral route, and critical-line zeros.

The in-test oracle is Euler-Maclaurin summation with hardcoded Bernoulli
numbers — a completely separate algorithm from the accelerated
alternating series used by the library.  Zero ordinates are frozen from
30-digit mpmath zetazero values.
"""

import math

import numpy as np
import pytest

from zetalab.errors import DomainError, PoleError, PrefactorSingular
from zetalab.numerics.types import ToleranceSpec
from zetalab.zeta import (
    find_zeros,
    functional_equation_residual,
    gamma_weighted_scale,
    zero_condition_integral,
    zeta,
    zeta_via_integral,
)

_BERNOULLI = [1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6]

ZERO_ORDINATES = (
    14.134725141734693790,
    21.022039638771554993,
    25.010857580145688763,
    30.424876125859513210,
)

TOL = ToleranceSpec(rel_tol=1e-10, abs_tol=1e-13)


def zeta_euler_maclaurin(z, n_terms=40):
    z = complex(z)
    s = sum(n**-z for n in range(1, n_terms))
    s += n_terms ** (1 - z) / (z - 1) + 0.5 * n_terms**-z
    for k, b2k in enumerate(_BERNOULLI, start=1):
        rise = 1.0 + 0j
        for j in range(2 * k - 1):
            rise *= z + j
        s += b2k / math.factorial(2 * k) * rise * n_terms ** (-z - 2 * k + 1)
    return s


def test_even_integer_closed_forms():
    np.testing.assert_allclose(zeta(2.0), math.pi**2 / 6.0, rtol=1e-12)
    np.testing.assert_allclose(zeta(4.0), math.pi**4 / 90.0, rtol=1e-12)


def test_against_euler_maclaurin():
    rng = np.random.default_rng(21)
    for _ in range(25):
        z = complex(rng.uniform(0.1, 0.9), rng.uniform(-12.0, 12.0))
        np.testing.assert_allclose(zeta(z), zeta_euler_maclaurin(z), rtol=1e-11)


def test_frozen_strip_points():
    np.testing.assert_allclose(
        zeta(0.3 + 5j), 0.6756489981160233 + 0.25414478655467744j, rtol=1e-12
    )
    np.testing.assert_allclose(
        zeta(0.7 + 12.5j), 0.7525807819078811 - 0.64750531289394057j, rtol=1e-12
    )


def test_conjugate_symmetry():
    rng = np.random.default_rng(3)
    for _ in range(10):
        z = complex(rng.uniform(0.2, 0.8), rng.uniform(0.5, 20.0))
        np.testing.assert_allclose(
            zeta(z.conjugate()), zeta(z).conjugate(), rtol=1e-12
        )


def test_series_vs_integral_routes():
    """The accelerated series and the weighted half-line integral are
    fully independent evaluation pipelines; they must coincide in the
    strip."""
    rng = np.random.default_rng(40)
    for _ in range(12):
        z = complex(rng.uniform(0.15, 0.85), rng.uniform(-9.0, 9.0))
        np.testing.assert_allclose(zeta_via_integral(z, TOL), zeta(z), rtol=1e-8)


def test_functional_equation():
    rng = np.random.default_rng(41)
    for _ in range(20):
        z = complex(rng.uniform(0.1, 0.9), rng.uniform(-15.0, 15.0))
        assert functional_equation_residual(z) < 1e-9


def test_pole_and_prefactor_guards():
    with pytest.raises(PoleError):
        zeta(1.0)
    with pytest.raises(PrefactorSingular):
        zeta(1.0 + 2j * math.pi / math.log(2.0))
    with pytest.raises(DomainError):
        zeta_via_integral(-0.5, TOL)
    with pytest.raises(DomainError):
        zero_condition_integral(1.5 + 0.5j, TOL)


def test_find_zeros_first_three():
    zeros = find_zeros(10.0, 30.0)
    assert len(zeros) == 3
    for found, expected in zip(zeros, ZERO_ORDINATES):
        assert abs(found.ordinate - expected) < 1e-8
        assert abs(zeta(0.5 + 1j * found.ordinate)) < 1e-9
        assert found.residual < 1e-9


def test_find_zeros_scan_stability():
    coarse = find_zeros(10.0, 30.0, scan_step=0.05)
    fine = find_zeros(10.0, 30.0, scan_step=0.025)
    assert len(coarse) == len(fine) == 3
    for a, b in zip(coarse, fine):
        assert abs(a.ordinate - b.ordinate) < 1e-8


def test_find_zeros_fourth_zero_window():
    zeros = find_zeros(28.0, 32.0)
    assert len(zeros) == 1
    assert abs(zeros[0].ordinate - ZERO_ORDINATES[3]) < 1e-8


def test_zero_condition_vanishes_at_zero():
    rho = 0.5 + 1j * ZERO_ORDINATES[0]
    scale = gamma_weighted_scale(rho)
    r = zero_condition_integral(rho, ToleranceSpec(1e-10, 1e-16))
    assert abs(r.value) <= 1e-6 * scale


def test_zero_condition_control_points():
    rng = np.random.default_rng(17)
    for _ in range(8):
        z = complex(rng.uniform(0.2, 0.8), rng.uniform(2.0, 12.0))
        scale = gamma_weighted_scale(z)
        r = zero_condition_integral(z, TOL)
        assert abs(r.value) >= 1e-3 * scale
