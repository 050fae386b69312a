"""Independent brute-force validators.

Nothing here reuses the closed forms it is meant to check: h is integrated
directly from its defining integrand, derivatives come from difference
stencils, and the double time integral is nested rather than reduced.
These paths are slow by design and intended for tests and the `selfcheck`
CLI command.
"""

from __future__ import annotations

import numpy as np

from .potential import PhysParams, Point3
from .quadrature import DEFAULT_SPEC, NoConvergence, QuadratureSpec, _gl_nodes, integrate_1d

__all__ = ["h_bruteforce", "fd_partial", "nested_double_time_integral"]

# order -> (offsets, coefficients, h power); all stencils are O(h^2) accurate
_STENCILS = {
    1: ((-1, 1), (-0.5, 0.5), 1),
    2: ((-1, 0, 1), (1.0, -2.0, 1.0), 2),
    3: ((-2, -1, 1, 2), (-0.5, 1.0, -1.0, 0.5), 3),
    4: ((-2, -1, 0, 1, 2), (1.0, -4.0, 6.0, -4.0, 1.0), 4),
}


def fd_partial(f, x: float, order: int, step: float | None = None, levels: int = 16):
    """Central-difference derivative, Richardson-extrapolated over many levels.

    A Neville tableau over geometrically shrinking steps (Ridders' scheme);
    `step` is the largest step tried, default 0.1*max(1, |x|).  A single
    extrapolation level cannot push high-order stencils below ~1e-5 relative
    in double precision, the full tableau reaches the rounding floor.

    Returns (estimate, error_bound); the bound is the tableau's smallest
    disagreement and is unreliable where the derivative is near zero.
    """
    if order not in _STENCILS:
        raise ValueError(f"order must be in 1..4, got {order!r}")
    if step is not None and step <= 0:
        raise ValueError("step must be > 0")
    if step is None:
        step = 0.1 * max(1.0, abs(x))
    offsets, coeffs, hpow = _STENCILS[order]

    def stencil(h):
        return sum(c * f(x + k * h) for k, c in zip(offsets, coeffs)) / h**hpow

    con = 1.4
    con2 = con * con
    tableau = {(0, 0): stencil(step)}
    best = tableau[(0, 0)]
    err = float("inf")
    h = step
    for i in range(1, levels):
        h /= con
        tableau[(0, i)] = stencil(h)
        fac = con2
        for j in range(1, i + 1):
            tableau[(j, i)] = (tableau[(j - 1, i)] * fac - tableau[(j - 1, i - 1)]) / (fac - 1.0)
            fac *= con2
            spread = max(
                abs(tableau[(j, i)] - tableau[(j - 1, i)]),
                abs(tableau[(j, i)] - tableau[(j - 1, i - 1)]),
            )
            if spread <= err:
                err = spread
                best = tableau[(j, i)]
    return best, err


def h_bruteforce(p: Point3, params: PhysParams, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Tensor-product Gauss-Legendre cubature of the squared x-force over the box.

    Panels double on all three axes at once until two levels agree; the full
    3-D integrand is evaluated slab by slab, with no use of its factorized
    structure.
    """
    a, g, L = params.a, params.g, params.L
    pref = 4.0 * a * a * g * g
    x, w = _gl_nodes(spec.nodes_per_panel)
    prev = None
    est = None
    err = float("inf")
    panels = 1
    while panels <= spec.max_panels:
        edges = np.linspace(0.0, L, panels + 1)
        mid = 0.5 * (edges[1:] + edges[:-1])
        half = 0.5 * (L / panels)
        nodes = (mid[:, None] + half * x[None, :]).ravel()
        wts = np.tile(half * w, panels)
        du = nodes - p.x
        dv = nodes - p.y
        dw = nodes - p.z
        acc = 0.0
        for k in range(nodes.size):
            slab = pref * du[None, :] ** 2 * np.exp(
                -2.0 * a * (du[None, :] ** 2 + dv[:, None] ** 2 + dw[k] ** 2)
            )
            acc += wts[k] * float(wts @ slab @ wts)
        est = acc
        if prev is not None:
            err = abs(est - prev)
            if err <= max(spec.abs_tol, spec.rel_tol * abs(est)):
                return est
        prev = est
        panels *= 2
    raise NoConvergence(
        f"cubature did not converge within {spec.max_panels} panels per axis",
        estimate=est,
        error_bound=err,
    )


def nested_double_time_integral(f, t: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """int_0^t ds1 int_0^s1 f(s2) ds2 with the nesting kept literal.

    The reduced form in `quadrature.triangular_double_integral` must agree
    with this to quadrature tolerance whenever f depends on s2 only.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0:
        return 0.0

    def outer(s1_nodes):
        return np.array([integrate_1d(f, 0.0, float(s1), spec) for s1 in s1_nodes])

    return integrate_1d(outer, 0.0, t, spec)
