"""Built-in validation suite: closed forms vs the brute-force oracles.

Each check prints one PASS/FAIL line.  Sample sizes are kept small enough
for an interactive run; the test suite repeats the same checks at full
acceptance strength.
"""

from __future__ import annotations

import numpy as np

from . import fields, nse, oracle
from .potential import PhysParams, Point3, h_partials
from .quadrature import QuadratureSpec, triangular_double_integral

__all__ = ["run_selfcheck"]


def _rel(got, want, floor=1e-300):
    return abs(got - want) / max(abs(want), floor)


def _check_h_closed_form(params, quad, rng):
    # rel-only stopping: the default abs_tol would accept tiny tail values early
    ospec = QuadratureSpec(
        nodes_per_panel=quad.nodes_per_panel,
        max_panels=quad.max_panels,
        rel_tol=min(quad.rel_tol, 1e-10),
        abs_tol=1e-300,
    )
    worst = 0.0
    for _ in range(5):
        p = Point3(*rng.uniform(-5.0, 15.0, size=3))
        brute = oracle.h_bruteforce(p, params, ospec)
        worst = max(worst, _rel(h_partials(p, params, 0).value, brute))
    return worst < 1e-8, f"max rel err {worst:.3g} (tol 1e-8)"


def _check_h_partials(params, quad, rng):
    # ladder: first differences of each closed-form order against the next,
    # anchored at the value (which the cubature check validates directly)
    step = 0.35 / np.sqrt(2.0 * params.a)
    worst = 0.0
    checked = 0
    while checked < 8:
        p = Point3(*rng.uniform(0.3, params.L - 0.3, size=3))
        axis = ("x", "y", "z")[int(rng.integers(0, 3))]
        order = int(rng.integers(1, 5))

        def f(c):
            q = {"x": Point3(c, p.y, p.z), "y": Point3(p.x, c, p.z), "z": Point3(p.x, p.y, c)}[
                axis
            ]
            return h_partials(q, params, order - 1).partial(axis, order - 1)

        est, _ = oracle.fd_partial(f, getattr(p, axis), 1, step)
        if abs(est) < 1e-5:
            continue  # derivative below the difference noise floor; draw again
        worst = max(worst, _rel(h_partials(p, params, order).partial(axis, order), est))
        checked += 1
    return worst < 1e-6, f"max rel err {worst:.3g} over {checked} partials (tol 1e-6)"


def _check_triangular_reduction(params, quad, rng):
    worst = 0.0
    for _ in range(3):
        p = Point3(*rng.uniform(1.0, 9.0, size=3))
        t = float(rng.uniform(0.05, 1.0))
        kern = lambda s2: fields.momentum_kernel_x(p, s2, params)
        red = triangular_double_integral(kern, t, quad)
        nested = oracle.nested_double_time_integral(kern, t, quad)
        worst = max(worst, _rel(red, nested))
    return worst < 1e-8, f"max rel err {worst:.3g} (tol 1e-8)"


def _check_initial_data(params, quad, rng):
    for _ in range(5):
        p = Point3(*rng.uniform(0.0, params.L, size=3))
        mom = fields.momentum_field(p, 0.0, params, quad)
        e = fields.energy_field(p, 0.0, params, quad)
        e0 = params.p0**2 / (2.0 * params.m)
        if (mom.px, mom.py, mom.pz) != (params.p0, 0.0, 0.0) or tuple(e) != (e0, 0.0, 0.0, e0):
            return False, f"non-exact initial data at {p}"
    return True, "momentum (p0,0,0) and energy (p0^2/2m,0,0) exact at t=0"


def _check_mirror_symmetry(params, quad, rng):
    worst = 0.0
    for _ in range(3):
        x, y, z = rng.uniform(0.0, params.L, size=3)
        t = float(rng.uniform(0.1, 0.6))
        a = fields.momentum_field(Point3(x, y, z), t, params, quad)
        b = fields.momentum_field(Point3(x, z, y), t, params, quad)
        worst = max(worst, _rel(a.py, b.pz), _rel(a.pz, b.py), _rel(a.px, b.px))
    return worst < 1e-12, f"max rel err {worst:.3g} under y<->z swap (tol 1e-12)"


def _check_coupling_scaling(params, quad, rng):
    p = Point3(5.0, 0.0, 0.0)
    t = 0.5
    doubled = PhysParams(
        a=params.a, g=2.0 * params.g, m=params.m, L=params.L, p0=params.p0, nu=params.nu
    )
    base = fields.momentum_field(p, t, params, quad)
    big = fields.momentum_field(p, t, doubled, quad)
    ratio = (big.px - params.p0) / (base.px - params.p0)
    ok = abs(ratio - 4.0) < 1e-10
    return ok, f"(px-p0) ratio under g->2g: {ratio!r} (want 4)"


def _check_time_derivative_identity(params, quad, rng):
    worst = 0.0
    dt = 1e-4
    for _ in range(2):
        p = Point3(*rng.uniform(3.0, 9.0, size=3))
        # pick t inside the transit window, where the rate is not yet zero
        sigma = float(rng.uniform(-1.5, 2.0))
        t = (p.x - sigma) * params.m / params.p0
        direct = fields.momentum_rate_x(p, t, params, quad)
        stepped = (
            fields.momentum_field(p, t + dt, params, quad).px
            - fields.momentum_field(p, t - dt, params, quad).px
        ) / (2.0 * dt)
        worst = max(worst, _rel(direct, stepped))
    return worst < 1e-5, f"max rel err {worst:.3g} vs central time difference (tol 1e-5)"


_CHECKS = (
    ("h closed form vs brute-force cubature", _check_h_closed_form),
    ("h partials vs Richardson finite differences", _check_h_partials),
    ("triangular reduction vs nested time integral", _check_triangular_reduction),
    ("initial data exactness", _check_initial_data),
    ("y<->z mirror symmetry", _check_mirror_symmetry),
    ("g^2 coupling scaling", _check_coupling_scaling),
    ("time-derivative identity", _check_time_derivative_identity),
)


def run_selfcheck(params: PhysParams, quad: QuadratureSpec, out=print) -> bool:
    """Run every oracle check; returns True when all pass."""
    all_ok = True
    for name, check in _CHECKS:
        rng = np.random.default_rng(20260810)
        ok, detail = check(params, quad, rng)
        all_ok &= ok
        out(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return all_ok
