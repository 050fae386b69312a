"""Velocity divergence and the momentum-balance pressure-gradient cross-check.

The pressure gradient is evaluated two ways:

  * prescribed by the incompressible momentum balance,
        dP/dx = nu*lap(u_x) - (u . grad) u_x - du_x/dt,
    with spatial derivatives of u by 4th-order central differences and the
    time derivative by an exact single quadrature;
  * directly, as the analytic x-derivative of the pressure field, which
    pushes one extra derivative onto h under the time integral.

Agreement between the two is only ever assessed in shape (sign matches and
normalized correlation), never pointwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .fields import (
    Momentum3,
    UnsupportedMass,
    _kernel_time_integral,
    momentum_component,
    momentum_field,
    momentum_rate_x,
)
from .potential import PhysParams, Point3, axial_factor, transverse_factor
from .quadrature import DEFAULT_SPEC, QuadratureSpec

__all__ = [
    "DivergenceEstimate",
    "ComparePoint",
    "NSEReport",
    "EQUATION_FORMS_NOTE",
    "velocity",
    "divergence",
    "nse_pressure_gradient_x",
    "te_pressure_gradient_x",
    "compare_te_nse",
]

# Two conventions of the same balance circulate; this module evaluates the
# first.  The second omits the viscous term and flips the advective sign.
EQUATION_FORMS_NOTE = (
    "pressure-gradient form used: dP/dx = nu*lap(ux) - (u.grad)ux - dux/dt; "
    "alternative form not used: dP/dx = (u.grad)ux - dux/dt"
)

_BOUNDARY_MARGIN = 0.5  # distance to a box face below which a point counts as boundary


class DivergenceEstimate(NamedTuple):
    value: float
    error: float


class ComparePoint(NamedTuple):
    point: Point3
    te_grad_px: float
    nse_grad_px: float
    divergence: float
    divergence_error: float


@dataclass(frozen=True)
class NSEReport:
    """Shape comparison of the two pressure gradients over a grid."""

    t: float
    points: tuple[ComparePoint, ...]
    sign_match_fraction: float
    correlation: float
    max_div_interior: float
    max_div_boundary: float
    equation_note: str = EQUATION_FORMS_NOTE

    @property
    def n_points(self) -> int:
        return len(self.points)


def velocity(
    p: Point3, t: float, params: PhysParams, spec: QuadratureSpec = DEFAULT_SPEC
) -> Momentum3:
    """u = momentum / m, componentwise."""
    mom = momentum_field(p, t, params, spec)
    return Momentum3(mom.px / params.m, mom.py / params.m, mom.pz / params.m)


def _offset(p: Point3, axis: str, d: float) -> Point3:
    if axis == "x":
        return Point3(p.x + d, p.y, p.z)
    if axis == "y":
        return Point3(p.x, p.y + d, p.z)
    return Point3(p.x, p.y, p.z + d)


def _u_comp(p, t, comp, params, spec):
    return momentum_component(p, t, params, comp, spec) / params.m


def _d1_4th(vals, h):
    # vals at offsets (-2h, -h, +h, +2h)
    return (vals[0] - 8.0 * vals[1] + 8.0 * vals[2] - vals[3]) / (12.0 * h)


def _d2_4th(vals, center, h):
    return (-vals[0] + 16.0 * vals[1] - 30.0 * center + 16.0 * vals[2] - vals[3]) / (
        12.0 * h * h
    )


def _div_once(p, t, params, spec, h):
    total = 0.0
    for axis in ("x", "y", "z"):
        vals = [_u_comp(_offset(p, axis, k * h), t, axis, params, spec) for k in (-2, -1, 1, 2)]
        total += _d1_4th(vals, h)
    return total


def divergence(
    p: Point3,
    t: float,
    params: PhysParams,
    spec: QuadratureSpec = DEFAULT_SPEC,
    step: float | None = None,
) -> DivergenceEstimate:
    """div u by 4th-order central differences, with a half-step error estimate.

    Returns the half-step value; the error bound is |fine - coarse| / 15,
    the Richardson factor for a 4th-order stencil.
    """
    if step is None:
        step = params.L / 200.0
    if step <= 0:
        raise ValueError("step must be > 0")
    coarse = _div_once(p, t, params, spec, step)
    fine = _div_once(p, t, params, spec, 0.5 * step)
    return DivergenceEstimate(value=fine, error=abs(fine - coarse) / 15.0)


def nse_pressure_gradient_x(
    p: Point3,
    t: float,
    params: PhysParams,
    spec: QuadratureSpec = DEFAULT_SPEC,
    step: float | None = None,
) -> float:
    """dP/dx prescribed by the momentum balance at (p, t).

    nu*lap(u_x) - (u.grad)u_x - du_x/dt; u_x stencils use the given spatial
    step (default L/200), du_x/dt is the exact single-quadrature identity.
    """
    if step is None:
        step = params.L / 200.0
    if step <= 0:
        raise ValueError("step must be > 0")
    h = step
    u0 = velocity(p, t, params, spec)
    lap = 0.0
    adv = 0.0
    u_center = (u0.px, u0.py, u0.pz)
    for i, axis in enumerate(("x", "y", "z")):
        vals = [_u_comp(_offset(p, axis, k * h), t, "x", params, spec) for k in (-2, -1, 1, 2)]
        lap += _d2_4th(vals, u0.px, h)
        adv += u_center[i] * _d1_4th(vals, h)
    du_dt = momentum_rate_x(p, t, params, spec) / params.m
    return params.nu * lap - adv - du_dt


def te_pressure_gradient_x(
    p: Point3, t: float, params: PhysParams, spec: QuadratureSpec = DEFAULT_SPEC
) -> float:
    """Analytic d/dx of the pressure field (m = 1 only).

    Differentiating the x-energy kernel under the time integral raises each
    h partial by one order, so this path exercises h_x, h_xx and h_xxx.
    """
    if params.m != 1.0:
        raise UnsupportedMass(
            f"pressure gradient from energy requires m = 1, got m = {params.m!r}"
        )
    p0 = params.p0
    g2 = params.g * params.g

    def kernel(s2):
        sx = p.x - p0 * s2
        tyz = g2 * transverse_factor(p.y, params, 0) * transverse_factor(p.z, params, 0)
        hx = axial_factor(sx, params, 1) * tyz
        hxx = axial_factor(sx, params, 2) * tyz
        hxxx = axial_factor(sx, params, 3) * tyz
        return 2.0 * hx - 4.0 * p0 * s2 * hxx + p0 * p0 * s2 * s2 * hxxx

    # P_x = 4 * energy_x and energy change carries 1/2: net prefactor 2
    return 2.0 * _kernel_time_integral(kernel, p, t, params, spec)


def _correlation(a, b):
    sa = math.fsum(v * v for v in a)
    sb = math.fsum(v * v for v in b)
    if sa == 0.0 and sb == 0.0:
        return 1.0  # two identically zero signals agree by convention
    if sa == 0.0 or sb == 0.0:
        return 0.0
    return math.fsum(x * y for x, y in zip(a, b)) / math.sqrt(sa * sb)


def _sign(v):
    return (v > 0) - (v < 0)


def compare_te_nse(
    grid,
    t: float,
    params: PhysParams,
    spec: QuadratureSpec = DEFAULT_SPEC,
    step: float | None = None,
) -> NSEReport:
    """Evaluate both pressure gradients (and div u) over a grid of points.

    `grid` is any iterable of Point3 (a config GridSpec expands to one).
    The report never asserts pointwise equality; it summarizes shape
    agreement as a sign-match fraction and a normalized correlation.
    """
    from .config import GridSpec  # local import keeps the module dependency one-way

    if isinstance(grid, GridSpec):
        points = grid.points()
    else:
        points = list(grid)
    if not points:
        raise ValueError("grid must contain at least one point")

    rows = []
    for pt in points:
        te = te_pressure_gradient_x(pt, t, params, spec)
        nse = nse_pressure_gradient_x(pt, t, params, spec, step)
        dv = divergence(pt, t, params, spec, step)
        rows.append(ComparePoint(pt, te, nse, dv.value, dv.error))

    te_vals = [r.te_grad_px for r in rows]
    nse_vals = [r.nse_grad_px for r in rows]
    matches = sum(1 for a, b in zip(te_vals, nse_vals) if _sign(a) == _sign(b))

    div_interior = []
    div_boundary = []
    for r in rows:
        dist = min(
            min(c, params.L - c) for c in (r.point.x, r.point.y, r.point.z)
        )
        (div_interior if dist > _BOUNDARY_MARGIN else div_boundary).append(abs(r.divergence))

    return NSEReport(
        t=t,
        points=tuple(rows),
        sign_match_fraction=matches / len(rows),
        correlation=_correlation(te_vals, nse_vals),
        max_div_interior=max(div_interior) if div_interior else math.nan,
        max_div_boundary=max(div_boundary) if div_boundary else math.nan,
    )
