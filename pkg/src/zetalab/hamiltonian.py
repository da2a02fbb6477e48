"""Finite-difference realization of the mixed-derivative wave operator

    H = d2/dxdy + i beta y d/dy + i (1-beta) x d/dx + i/2

on rectangular half-plane grids, together with its flux identity, a
hermiticity probe, eigen-residual ladders for wave evaluators, the
pointwise identities satisfied by the integrand families, the beta = 1/2
symmetric form, and a closed-form eigenfunction for checking all of it.

Stencils are the standard second-order central ones; the mixed derivative
uses the four diagonal neighbours.  They are exact on bilinear functions,
which the tests exploit, and the operator application returns a field on
the interior grid (one ring smaller) rather than inventing boundary data.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import BoundaryViolation, DomainError, GridTooSmall
from .numerics.richardson import estimate_order
from .numerics.types import ResidualReport, ToleranceSpec
from .waves import EXPONENTIAL, EnvelopeSpec, HalfPlanePoint, envelope_integrand, interval_integrand

__all__ = [
    "GridSpec",
    "GridField",
    "FluxField",
    "HermiticityReport",
    "apply_hamiltonian",
    "eigen_residual",
    "flux_components",
    "flux_identity_residual",
    "hermiticity_defect",
    "integrand_pde_residuals",
    "peculiar_solution",
    "symmetric_transform_check",
]


@dataclass(frozen=True)
class GridSpec:
    """A uniform rectangular grid on [x_min, x_max] x [y_min, y_max]."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int

    def __post_init__(self):
        for v in (self.x_min, self.x_max, self.y_min, self.y_max):
            if not math.isfinite(v):
                raise DomainError("grid bounds must be finite")
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise DomainError("grid bounds must be ordered")
        if self.nx < 3 or self.ny < 3:
            raise GridTooSmall("grids need at least 3 points per axis")

    @property
    def hx(self) -> float:
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def hy(self) -> float:
        return (self.y_max - self.y_min) / (self.ny - 1)

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.linspace(self.x_min, self.x_max, self.nx),
            np.linspace(self.y_min, self.y_max, self.ny),
        )

    def shrink(self, rings: int = 1) -> "GridSpec":
        if self.nx - 2 * rings < 1 or self.ny - 2 * rings < 1:
            raise GridTooSmall(
                f"cannot strip {rings} boundary ring(s) from a "
                f"{self.nx} x {self.ny} grid"
            )
        return GridSpec(
            x_min=self.x_min + rings * self.hx,
            x_max=self.x_max - rings * self.hx,
            y_min=self.y_min + rings * self.hy,
            y_max=self.y_max - rings * self.hy,
            nx=self.nx - 2 * rings,
            ny=self.ny - 2 * rings,
        )


@dataclass(frozen=True)
class GridField:
    """Complex field values sampled on a :class:`GridSpec` (index [ix, iy])."""

    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.shape != (self.spec.nx, self.spec.ny):
            raise DomainError(
                f"field shape {v.shape} does not match grid "
                f"{(self.spec.nx, self.spec.ny)}"
            )
        if not np.all(np.isfinite(v.real) & np.isfinite(v.imag)):
            raise DomainError("field values must be finite")

    @classmethod
    def from_function(cls, spec: GridSpec, fn: Callable) -> "GridField":
        xs, ys = spec.axes()
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        try:
            vals = np.asarray(fn(X, Y), dtype=np.complex128)
            if vals.shape != X.shape:
                raise ValueError
        except Exception:
            vals = np.empty(X.shape, dtype=np.complex128)
            for i in range(spec.nx):
                for j in range(spec.ny):
                    vals[i, j] = fn(float(xs[i]), float(ys[j]))
        return cls(spec=spec, values=vals)

    def interior(self, rings: int = 1) -> "GridField":
        return GridField(
            spec=self.spec.shrink(rings),
            values=self.values[rings:-rings, rings:-rings],
        )


class FluxField(NamedTuple):
    """The two flux components on a common (interior) grid."""

    j1: GridField
    j2: GridField


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not (0.0 <= beta <= 1.0):
        raise DomainError(f"beta must lie in [0, 1], got {beta}")
    return beta


def _interior_mesh(spec: GridSpec):
    xs, ys = spec.axes()
    return np.meshgrid(xs[1:-1], ys[1:-1], indexing="ij")


def apply_hamiltonian(
    field: GridField, beta: float, include_constant: bool = True
) -> GridField:
    """Apply the operator by central stencils; result lives on the interior.

    ``include_constant=False`` drops the i/2 term — useful only for
    demonstrating that the flux identity then fails, which is the point of
    the constant.
    """
    beta = _check_beta(beta)
    spec = field.spec
    if spec.nx < 3 or spec.ny < 3:
        raise GridTooSmall("operator stencil needs a 3 x 3 neighbourhood")
    f = field.values
    hx, hy = spec.hx, spec.hy
    mixed = (f[2:, 2:] - f[2:, :-2] - f[:-2, 2:] + f[:-2, :-2]) / (4.0 * hx * hy)
    dx = (f[2:, 1:-1] - f[:-2, 1:-1]) / (2.0 * hx)
    dy = (f[1:-1, 2:] - f[1:-1, :-2]) / (2.0 * hy)
    X, Y = _interior_mesh(spec)
    out = mixed + 1j * beta * Y * dy + 1j * (1.0 - beta) * X * dx
    if include_constant:
        out = out + 0.5j * f[1:-1, 1:-1]
    return GridField(spec=spec.shrink(1), values=out)


def flux_components(phi: GridField, psi: GridField, beta: float) -> FluxField:
    """The flux pair whose divergence balances the operator asymmetry:

        J1 = (conj(phi)_y psi - conj(phi) psi_y)/2 - i (1-beta) x conj(phi) psi
        J2 = (conj(phi)_x psi - conj(phi) psi_x)/2 - i beta  y conj(phi) psi

    computed on the shared interior grid.
    """
    beta = _check_beta(beta)
    if phi.spec != psi.spec:
        raise DomainError("flux needs both fields on the same grid")
    spec = phi.spec
    p = np.conj(phi.values)
    s = psi.values
    hx, hy = spec.hx, spec.hy
    p_int = p[1:-1, 1:-1]
    s_int = s[1:-1, 1:-1]
    py = (p[1:-1, 2:] - p[1:-1, :-2]) / (2.0 * hy)
    sy = (s[1:-1, 2:] - s[1:-1, :-2]) / (2.0 * hy)
    px = (p[2:, 1:-1] - p[:-2, 1:-1]) / (2.0 * hx)
    sx = (s[2:, 1:-1] - s[:-2, 1:-1]) / (2.0 * hx)
    X, Y = _interior_mesh(spec)
    inner = spec.shrink(1)
    j1 = 0.5 * (py * s_int - p_int * sy) - 1j * (1.0 - beta) * X * p_int * s_int
    j2 = 0.5 * (px * s_int - p_int * sx) - 1j * beta * Y * p_int * s_int
    return FluxField(
        j1=GridField(spec=inner, values=j1),
        j2=GridField(spec=inner, values=j2),
    )


def _grid_for(window, h: float) -> GridSpec:
    (x0, x1), (y0, y1) = window
    nx = int(round((x1 - x0) / h)) + 1
    ny = int(round((y1 - y0) / h)) + 1
    if abs((x1 - x0) / (nx - 1) - h) > 1e-9 * h or abs(
        (y1 - y0) / (ny - 1) - h
    ) > 1e-9 * h:
        raise DomainError(
            f"step {h} does not tile the window {window} exactly"
        )
    return GridSpec(x_min=x0, x_max=x1, y_min=y0, y_max=y1, nx=nx, ny=ny)


def flux_identity_residual(
    phi_fn: Callable,
    psi_fn: Callable,
    beta: float,
    window=((-1.5, 1.5), (0.25, 1.75)),
    ladder: tuple[float, ...] = (0.1, 0.05, 0.025),
    drop_constant: bool = False,
) -> ResidualReport:
    """Sup-norm residual of  conj(H phi) psi - conj(phi) H psi = div J
    across a grid-refinement ladder.

    With ``drop_constant=True`` the i/2 term is removed from the operator
    on both sides; the residual then stops converging and plateaus at
    |conj(phi) psi| — the regression guard for why the constant exists.
    """
    beta = _check_beta(beta)
    if len(ladder) < 3 or any(b >= a for a, b in zip(ladder, ladder[1:])):
        raise DomainError("ladder must be strictly decreasing, length >= 3")
    residuals = []
    for h in ladder:
        spec = _grid_for(window, h)
        if spec.nx < 5 or spec.ny < 5:
            raise GridTooSmall(f"step {h} leaves no second interior ring")
        phi = GridField.from_function(spec, phi_fn)
        psi = GridField.from_function(spec, psi_fn)
        h_phi = apply_hamiltonian(phi, beta, include_constant=not drop_constant)
        h_psi = apply_hamiltonian(psi, beta, include_constant=not drop_constant)
        lhs = (
            np.conj(h_phi.values[1:-1, 1:-1]) * psi.values[2:-2, 2:-2]
            - np.conj(phi.values[2:-2, 2:-2]) * h_psi.values[1:-1, 1:-1]
        )
        j1, j2 = flux_components(phi, psi, beta)
        hx, hy = spec.hx, spec.hy
        div = (j1.values[2:, 1:-1] - j1.values[:-2, 1:-1]) / (2.0 * hx) + (
            j2.values[1:-1, 2:] - j2.values[1:-1, :-2]
        ) / (2.0 * hy)
        residuals.append(float(np.max(np.abs(lhs - div))))
    return estimate_order(list(ladder), residuals)


class HermiticityReport(NamedTuple):
    """Inner-product asymmetry of the operator on compactly supported fields."""

    defect: complex
    bound_constant: float
    spacings: tuple[float, float]
    norm_left: float
    norm_right: float


def _trapezoid_2d(values: np.ndarray, hx: float, hy: float) -> complex:
    wx = np.ones(values.shape[0])
    wx[0] = wx[-1] = 0.5
    wy = np.ones(values.shape[1])
    wy[0] = wy[-1] = 0.5
    return complex(np.sum(values * wx[:, None] * wy[None, :]) * hx * hy)


def hermiticity_defect(
    phi: GridField, psi: GridField, beta: float
) -> HermiticityReport:
    """<H phi | psi> - <phi | H psi> on the interior grid.

    Both fields must vanish on the grid boundary (to 1e-12 of their sup),
    otherwise the statement being probed does not apply and
    :class:`BoundaryViolation` is raised.  For fields that do vanish, the
    defect is pure stencil error, O(hx^2 + hy^2); the returned
    ``bound_constant`` is the defect divided by that factor and the field
    norms, so it should sit at O(1) across a refinement ladder.
    """
    beta = _check_beta(beta)
    if phi.spec != psi.spec:
        raise DomainError("hermiticity probe needs a shared grid")
    for name, field in (("left", phi), ("right", psi)):
        v = field.values
        edge = max(
            float(np.max(np.abs(v[0, :]))),
            float(np.max(np.abs(v[-1, :]))),
            float(np.max(np.abs(v[:, 0]))),
            float(np.max(np.abs(v[:, -1]))),
        )
        sup = float(np.max(np.abs(v)))
        if edge > 1e-12 * max(1.0, sup):
            raise BoundaryViolation(
                f"{name} field reaches {edge:.3e} on the grid edge; "
                "the identity needs boundary-vanishing fields"
            )
    spec = phi.spec
    h_phi = apply_hamiltonian(phi, beta)
    h_psi = apply_hamiltonian(psi, beta)
    phi_int = phi.interior(1)
    psi_int = psi.interior(1)
    hx, hy = spec.hx, spec.hy
    left = _trapezoid_2d(np.conj(h_phi.values) * psi_int.values, hx, hy)
    right = _trapezoid_2d(np.conj(phi_int.values) * h_psi.values, hx, hy)
    defect = left - right
    norm_left = math.sqrt(
        abs(_trapezoid_2d(np.abs(phi.values) ** 2 + 0j, hx, hy))
    )
    norm_right = math.sqrt(
        abs(_trapezoid_2d(np.abs(psi.values) ** 2 + 0j, hx, hy))
    )
    denom = (hx**2 + hy**2) * max(norm_left * norm_right, 1e-300)
    return HermiticityReport(
        defect=defect,
        bound_constant=abs(defect) / denom,
        spacings=(hx, hy),
        norm_left=norm_left,
        norm_right=norm_right,
    )


def eigen_residual(
    evaluator: Callable,
    z: complex,
    beta: float,
    window=((0.5, 2.0), (0.5, 2.0)),
    ladder: tuple[float, ...] = (0.2, 0.1, 0.05),
    probes: tuple[int, int] = (3, 3),
    evaluator_tol: ToleranceSpec | None = None,
) -> ResidualReport:
    """Stencil residual of the eigen relation  L W = -i z W  for a wave
    evaluator, where L is the operator without its constant term.

    ``evaluator(x, y) -> complex`` is typically a quadrature-backed wave,
    so each sample carries noise ~ evaluator_tol; the reported noise floor
    scales that by the stencil amplification 1/(4h^2) + |coeff|/(2h) and
    the ladder fit excludes rungs inside 4x the floor.
    """
    beta = _check_beta(beta)
    z = complex(z)
    if len(ladder) < 3 or any(b >= a for a, b in zip(ladder, ladder[1:])):
        raise DomainError("ladder must be strictly decreasing, length >= 3")
    (x0, x1), (y0, y1) = window
    px = np.linspace(x0, x1, probes[0])
    py = np.linspace(y0, y1, probes[1])
    evaluator_tol = evaluator_tol or ToleranceSpec(rel_tol=1e-8, abs_tol=1e-14)

    cache: dict[tuple[float, float], complex] = {}

    def ev(xv: float, yv: float) -> complex:
        key = (xv, yv)
        if key not in cache:
            cache[key] = complex(evaluator(xv, yv))
        return cache[key]

    residuals = []
    sup_value = 0.0
    for h in ladder:
        worst = 0.0
        for xv in px:
            for yv in py:
                xv = float(xv)
                yv = float(yv)
                corner = (
                    ev(xv + h, yv + h)
                    - ev(xv + h, yv - h)
                    - ev(xv - h, yv + h)
                    + ev(xv - h, yv - h)
                ) / (4.0 * h * h)
                dx = (ev(xv + h, yv) - ev(xv - h, yv)) / (2.0 * h)
                dy = (ev(xv, yv + h) - ev(xv, yv - h)) / (2.0 * h)
                center = ev(xv, yv)
                sup_value = max(sup_value, abs(center))
                res = abs(
                    corner
                    + 1j * beta * yv * dy
                    + 1j * (1.0 - beta) * xv * dx
                    + 1j * z * center
                )
                worst = max(worst, res)
        residuals.append(worst)
    eps = evaluator_tol.target(sup_value)
    h_min = min(ladder)
    floor = eps * (
        1.0 / (4.0 * h_min * h_min)
        + beta * max(abs(y0), abs(y1)) / (2.0 * h_min)
        + (1.0 - beta) * max(abs(x0), abs(x1)) / (2.0 * h_min)
        + abs(z)
    )
    return estimate_order(list(ladder), residuals, noise_floor=floor)


# --------------------------------------------------------------------------
# Pointwise integrand identities

def integrand_pde_residuals(
    beta: float,
    which: str = "envelope",
    point: tuple[float, float, float] = (1.0, 1.5, 1.0),
    theta: complex = 0.5 + 1.0j,
    envelope: EnvelopeSpec = EXPONENTIAL,
    ladder: tuple[float, ...] = (0.02, 0.01, 0.005),
) -> ResidualReport:
    """Stencil residuals of the identities the integrand families satisfy.

    ``which='envelope'``: the integrand e^{i x t^{1-b}} g(t + y t^b) obeys
    L G = i t dG/dt at every (x, y, t); the third coordinate of ``point``
    is t.  ``which='interval'``: the unit-interval integrand obeys
    L G - i d/du [u (1-u) G] = -i theta G; the third coordinate is u.
    All derivatives are central differences of analytic evaluations, so
    residuals fall at clean second order with no noise floor.
    """
    beta = _check_beta(beta)
    if len(ladder) < 3 or any(b >= a for a, b in zip(ladder, ladder[1:])):
        raise DomainError("ladder must be strictly decreasing, length >= 3")
    x0, y0, w0 = (float(v) for v in point)

    if which == "envelope":

        def value(xv, yv, t):
            return complex(
                envelope_integrand(
                    HalfPlanePoint(xv, yv), t, 1.0 + 0.0j, beta, envelope
                )
            )

        def rhs(xv, yv, t, h):
            dt = (value(xv, yv, t + h) - value(xv, yv, t - h)) / (2.0 * h)
            return 1j * t * dt

        if w0 <= 0:
            raise DomainError("the t coordinate must be positive")
    elif which == "interval":

        def value(xv, yv, u):
            return complex(
                interval_integrand(
                    HalfPlanePoint(xv, yv), u, theta, beta, envelope
                )
            )

        def rhs(xv, yv, u, h):
            up = (u + h) * (1.0 - u - h) * value(xv, yv, u + h)
            dn = (u - h) * (1.0 - u + h) * value(xv, yv, u - h)
            return 1j * (up - dn) / (2.0 * h) - 1j * theta * value(xv, yv, u)
        if not (0.0 < w0 < 1.0):
            raise DomainError("the u coordinate must lie in (0, 1)")
    else:
        raise DomainError("which must be 'envelope' or 'interval'")

    reach = 4.0 * max(ladder)
    if which == "interval" and not (w0 - reach > 0 and w0 + reach < 1):
        raise DomainError("u needs stencil clearance inside (0, 1)")
    if y0 - reach < 0:
        raise DomainError("y needs stencil clearance above 0")

    residuals = []
    for h in ladder:
        corner = (
            value(x0 + h, y0 + h, w0)
            - value(x0 + h, y0 - h, w0)
            - value(x0 - h, y0 + h, w0)
            + value(x0 - h, y0 - h, w0)
        ) / (4.0 * h * h)
        dx = (value(x0 + h, y0, w0) - value(x0 - h, y0, w0)) / (2.0 * h)
        dy = (value(x0, y0 + h, w0) - value(x0, y0 - h, w0)) / (2.0 * h)
        lhs = corner + 1j * beta * y0 * dy + 1j * (1.0 - beta) * x0 * dx
        residuals.append(abs(lhs - rhs(x0, y0, w0, h)))
    return estimate_order(list(ladder), residuals)


# --------------------------------------------------------------------------
# The beta = 1/2 symmetric form

def symmetric_transform_check(
    fn: Callable,
    window=((-1.0, 1.0), (0.25, 1.75)),
    ladder: tuple[float, ...] = (0.1, 0.05, 0.025),
    probes: tuple[int, int] = (3, 3),
) -> tuple[ResidualReport, ResidualReport]:
    """Two residual ladders certifying the beta = 1/2 reduction.

    First: conjugating the full operator by e^{-i x y / 2} leaves exactly
    ``d2/dxdy + x y / 4`` — checked by applying stencils to the conjugated
    samples of ``fn`` and comparing against that reduced form on ``fn``
    directly.  Second: rotating to u = (x+y)/2, v = (y-x)/2 turns the
    reduced form into the split harmonic-type operator
    ``(d2/du2 - d2/dv2 + u^2 - v^2) / 4`` — checked the same way.  Both
    residuals must fall at second order for any smooth test function.
    """
    if len(ladder) < 3 or any(b >= a for a, b in zip(ladder, ladder[1:])):
        raise DomainError("ladder must be strictly decreasing, length >= 3")
    (x0, x1), (y0, y1) = window
    px = np.linspace(x0, x1, probes[0])
    py = np.linspace(y0, y1, probes[1])

    def f(xv, yv):
        return complex(fn(xv, yv))

    def conjugated(xv, yv):
        return cmath.exp(-0.5j * xv * yv) * f(xv, yv)

    res_conj = []
    res_cone = []
    peak = 0.0
    for h in ladder:
        worst_a = 0.0
        worst_b = 0.0
        for xv in px:
            for yv in py:
                xv = float(xv)
                yv = float(yv)
                peak = max(peak, abs(f(xv, yv)))
                # --- conjugation identity ---
                corner_c = (
                    conjugated(xv + h, yv + h)
                    - conjugated(xv + h, yv - h)
                    - conjugated(xv - h, yv + h)
                    + conjugated(xv - h, yv - h)
                ) / (4.0 * h * h)
                dxc = (conjugated(xv + h, yv) - conjugated(xv - h, yv)) / (2.0 * h)
                dyc = (conjugated(xv, yv + h) - conjugated(xv, yv - h)) / (2.0 * h)
                full = (
                    corner_c
                    + 0.5j * yv * dyc
                    + 0.5j * xv * dxc
                    + 0.5j * conjugated(xv, yv)
                )
                lhs = cmath.exp(0.5j * xv * yv) * full
                corner_f = (
                    f(xv + h, yv + h)
                    - f(xv + h, yv - h)
                    - f(xv - h, yv + h)
                    + f(xv - h, yv - h)
                ) / (4.0 * h * h)
                reduced = corner_f + 0.25 * xv * yv * f(xv, yv)
                worst_a = max(worst_a, abs(lhs - reduced))
                # --- light-cone rotation of the reduced form ---
                u = 0.5 * (xv + yv)
                v = 0.5 * (yv - xv)

                def g(uu, vv):
                    return f(uu - vv, uu + vv)

                d2u = (g(u + h, v) - 2.0 * g(u, v) + g(u - h, v)) / (h * h)
                d2v = (g(u, v + h) - 2.0 * g(u, v) + g(u, v - h)) / (h * h)
                cone = 0.25 * (d2u - d2v + (u * u - v * v) * g(u, v))
                worst_b = max(worst_b, abs(reduced - cone))
        res_conj.append(worst_a)
        res_cone.append(worst_b)
    # Stencil arithmetic cannot resolve residuals below the rounding of
    # its own samples, ~eps * |f| / h^2 at the finest rung.  The rotation
    # stage in particular is an exact regrouping of the corner stencil, so
    # its residual consists of nothing else.
    floor = 64.0 * 2.220446049250313e-16 * peak / min(ladder) ** 2
    return (
        estimate_order(list(ladder), res_conj, noise_floor=floor),
        estimate_order(list(ladder), res_cone, noise_floor=floor),
    )


def peculiar_solution(p: HalfPlanePoint, z: complex) -> complex:
    """A closed-form eigenfunction of the beta = 1/2 operator:

        W(x, y) = q^{2z} / (q^2 + 1) * e^{-i x q / 2},   q = y + sqrt(1+y^2)

    satisfying  L W = -i z W  exactly (L the operator without constant).
    It is bounded on the half plane for Re z on the critical strip's
    center and decays nowhere — a genuinely different animal from the
    integral families, which is what makes it a useful stencil target.
    """
    z = complex(z)
    q = p.y + math.hypot(1.0, p.y)
    return cmath.exp(2.0 * z * math.log(q)) / (q * q + 1.0) * cmath.exp(
        -0.5j * p.x * q
    )
