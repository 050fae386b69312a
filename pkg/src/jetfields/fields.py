"""Time-evolved momentum, kinetic-energy and pressure fields of the jet.

The gas starts uniform with every particle carrying momentum (p0, 0, 0).
Each field change is a double time integral of spatial derivatives of h
evaluated at the free-streaming shifted point

    sigma(s2) = (x - p0*s2/m, y, z),

and because the kernels depend only on the inner time s2, the double
integral collapses to the single weighted quadrature in
`triangular_double_integral`.

Momentum fields are reported in momentum units; velocity u = p/m lives in
the `nse` module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .potential import PhysParams, Point3, axial_factor, transverse_factor
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_1d, triangular_double_integral

__all__ = [
    "Momentum3",
    "EnergyField",
    "PressureField",
    "FieldSample",
    "UnsupportedMass",
    "shifted_point",
    "momentum_kernel_x",
    "momentum_kernel_transverse",
    "energy_kernel_x",
    "energy_kernel_transverse",
    "momentum_field",
    "momentum_component",
    "momentum_rate_x",
    "energy_field",
    "pressure_field",
    "field_sample",
]


class UnsupportedMass(ValueError):
    """The pressure-from-energy factor is only defined for unit mass."""


@dataclass(frozen=True)
class Momentum3:
    px: float
    py: float
    pz: float

    def __post_init__(self):
        if not all(math.isfinite(c) for c in (self.px, self.py, self.pz)):
            raise ValueError("momentum components must be finite")


class EnergyField(NamedTuple):
    x: float
    y: float
    z: float
    total: float


class PressureField(NamedTuple):
    x: float
    y: float
    z: float


@dataclass(frozen=True)
class FieldSample:
    """All field values at one (point, time); optional entries were not requested."""

    point: Point3
    t: float
    momentum: Momentum3
    energy_x: float
    energy_y: float
    energy_z: float
    energy_total: float
    pressure_x: float | None = None
    pressure_y: float | None = None
    pressure_z: float | None = None
    divergence: float | None = None


def shifted_point(p: Point3, mom: Momentum3, s2: float, params: PhysParams) -> Point3:
    """Free-streaming shift r -> r - mom*s2/m."""
    if s2 < 0:
        raise ValueError("s2 must be >= 0")
    f = s2 / params.m
    return Point3(p.x - mom.px * f, p.y - mom.py * f, p.z - mom.pz * f)


def _support_exit(p: Point3, t: float, params: PhysParams) -> float:
    """Inner time beyond which every kernel underflows to zero.

    The shifted x drifts monotonically at speed p0/m; once it is `reach`
    past the box, exp(-2a reach^2) underflows, so the kernels vanish
    identically.  Splitting the quadrature there keeps panel doubling from
    accepting a spurious zero at large t, where the whole kernel support
    would otherwise sit between the first levels' nodes.
    """
    if params.p0 == 0.0:
        return t
    reach = 20.0 / math.sqrt(params.a)
    speed = abs(params.p0) / params.m
    if params.p0 > 0:
        s_exit = (p.x + reach) / speed
    else:
        s_exit = (params.L + reach - p.x) / speed
    return min(max(s_exit, 0.0), t)


def _kernel_time_integral(kern, p, t, params, spec, weighted=True):
    """Time integral of a shift kernel; weighted means the (t - s2) triangle factor."""
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0:
        return 0.0
    cut = _support_exit(p, t, params)
    if weighted:
        if cut >= t:
            return triangular_double_integral(kern, t, spec)
        f = lambda s2: (t - s2) * kern(s2)
    else:
        f = kern
        if cut >= t:
            return integrate_1d(f, 0.0, t, spec)
    return integrate_1d(f, 0.0, cut, spec) + integrate_1d(f, cut, t, spec)


def _transverse_product(p, params, order_y=0, order_z=0):
    return transverse_factor(p.y, params, order_y) * transverse_factor(p.z, params, order_z)


def momentum_kernel_x(p: Point3, s2, params: PhysParams):
    """x-momentum change integrand at inner time s2 (vectorized in s2).

    -(2 s2/m) h_x(sigma) + (p0 s2^2/m^2) h_xx(sigma); both terms shift only
    the x argument, so the transverse factors come out as constants.
    """
    m, p0 = params.m, params.p0
    sx = p.x - p0 * s2 / m
    tyz = params.g * params.g * _transverse_product(p, params)
    hx = axial_factor(sx, params, 1) * tyz
    hxx = axial_factor(sx, params, 2) * tyz
    return -(2.0 * s2 / m) * hx + (p0 * s2 * s2 / (m * m)) * hxx


def momentum_kernel_transverse(p: Point3, s2, params: PhysParams, axis: str):
    """Transverse momentum change integrand: -(2 s2/m) dh/daxis at sigma.

    The second-derivative term of the propagator carries the transverse
    momentum itself and the jet has none, so only the first derivative
    survives.  The y and z cases swap which transverse factor gets
    differentiated.
    """
    if axis == "y":
        tprod = _transverse_product(p, params, order_y=1)
    elif axis == "z":
        tprod = _transverse_product(p, params, order_z=1)
    else:
        raise ValueError(f"axis must be 'y' or 'z', got {axis!r}")
    m = params.m
    sx = p.x - params.p0 * s2 / m
    h_axis = params.g * params.g * axial_factor(sx, params, 0) * tprod
    return -(2.0 * s2 / m) * h_axis


def energy_kernel_x(p: Point3, s2, params: PhysParams):
    """x-energy change integrand: 2 h - (4 p0 s2/m) h_x + (p0^2 s2^2/m^2) h_xx at sigma."""
    m, p0 = params.m, params.p0
    sx = p.x - p0 * s2 / m
    tyz = params.g * params.g * _transverse_product(p, params)
    h0 = axial_factor(sx, params, 0) * tyz
    hx = axial_factor(sx, params, 1) * tyz
    hxx = axial_factor(sx, params, 2) * tyz
    return 2.0 * h0 - (4.0 * p0 * s2 / m) * hx + (p0 * p0 * s2 * s2 / (m * m)) * hxx


def energy_kernel_transverse(p: Point3, s2, params: PhysParams):
    """Transverse energy change integrand.

    With no transverse jet momentum the propagator reduces to 2 h(sigma),
    identical for the y and z directions.
    """
    m = params.m
    sx = p.x - params.p0 * s2 / m
    return 2.0 * params.g * params.g * axial_factor(sx, params, 0) * _transverse_product(p, params)


def momentum_field(
    p: Point3, t: float, params: PhysParams, spec: QuadratureSpec = DEFAULT_SPEC
) -> Momentum3:
    """Momentum at (p, t): (p0, 0, 0) plus the double-time-integrated kernels."""
    px = params.p0 + _kernel_time_integral(
        lambda s2: momentum_kernel_x(p, s2, params), p, t, params, spec
    )
    py = _kernel_time_integral(
        lambda s2: momentum_kernel_transverse(p, s2, params, "y"), p, t, params, spec
    )
    pz = _kernel_time_integral(
        lambda s2: momentum_kernel_transverse(p, s2, params, "z"), p, t, params, spec
    )
    return Momentum3(px, py, pz)


def momentum_component(
    p: Point3, t: float, params: PhysParams, comp: str, spec: QuadratureSpec = DEFAULT_SPEC
) -> float:
    """Single momentum component; saves two quadratures in stencil-heavy callers."""
    if comp == "x":
        return params.p0 + _kernel_time_integral(
            lambda s2: momentum_kernel_x(p, s2, params), p, t, params, spec
        )
    if comp in ("y", "z"):
        return _kernel_time_integral(
            lambda s2: momentum_kernel_transverse(p, s2, params, comp), p, t, params, spec
        )
    raise ValueError(f"comp must be one of 'x', 'y', 'z', got {comp!r}")


def momentum_rate_x(
    p: Point3, t: float, params: PhysParams, spec: QuadratureSpec = DEFAULT_SPEC
) -> float:
    """d(px)/dt via the exact identity d/dt int_0^t (t-s) f(s) ds = int_0^t f(s) ds.

    A single quadrature; no time differencing anywhere.
    """
    return _kernel_time_integral(
        lambda s2: momentum_kernel_x(p, s2, params), p, t, params, spec, weighted=False
    )


def energy_field(
    p: Point3, t: float, params: PhysParams, spec: QuadratureSpec = DEFAULT_SPEC
) -> EnergyField:
    """Kinetic energy densities (x, y, z, total) at (p, t).

    energy_x starts from the jet energy p0^2/(2m); the transverse kernels
    coincide, so one quadrature serves both y and z.
    """
    ex = params.p0 * params.p0 / (2.0 * params.m) + 0.5 * _kernel_time_integral(
        lambda s2: energy_kernel_x(p, s2, params), p, t, params, spec
    )
    transverse = 0.5 * _kernel_time_integral(
        lambda s2: energy_kernel_transverse(p, s2, params), p, t, params, spec
    )
    return EnergyField(ex, transverse, transverse, ex + 2.0 * transverse)


def pressure_field(
    p: Point3, t: float, params: PhysParams, spec: QuadratureSpec = DEFAULT_SPEC
) -> PressureField:
    """Pressure components as 4x the energy densities; defined for m = 1 only."""
    if params.m != 1.0:
        raise UnsupportedMass(
            f"pressure = 4 * energy density holds only for m = 1, got m = {params.m!r}"
        )
    e = energy_field(p, t, params, spec)
    return PressureField(4.0 * e.x, 4.0 * e.y, 4.0 * e.z)


def field_sample(
    p: Point3,
    t: float,
    params: PhysParams,
    spec: QuadratureSpec = DEFAULT_SPEC,
    with_pressure: bool | None = None,
) -> FieldSample:
    """Momentum + energy (+ pressure when m = 1) at one (point, time)."""
    mom = momentum_field(p, t, params, spec)
    e = energy_field(p, t, params, spec)
    if with_pressure is None:
        with_pressure = params.m == 1.0
    pr = None
    if with_pressure:
        if params.m != 1.0:
            raise UnsupportedMass("pressure requires m = 1")
        pr = PressureField(4.0 * e.x, 4.0 * e.y, 4.0 * e.z)
    return FieldSample(
        point=p,
        t=t,
        momentum=mom,
        energy_x=e.x,
        energy_y=e.y,
        energy_z=e.z,
        energy_total=e.total,
        pressure_x=None if pr is None else pr.x,
        pressure_y=None if pr is None else pr.y,
        pressure_z=None if pr is None else pr.z,
    )
