"""Canonical figure runs: the named scans behind the standard plot gallery.

Each recipe pins a full config, so its data bytes are reproducible run to
run.  The Cartesian scans sweep x and time along the y = z = 0 line; the
toroid scans sweep the periodic embedding angles at a fixed time with
omega = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import AxisSpec, RunConfig, apply_overrides, default_config

__all__ = ["Recipe", "RECIPES", "recipe_config"]


@dataclass(frozen=True)
class Recipe:
    name: str
    title: str
    mode: str  # "cart" | "toroid"
    value_col: str
    overrides: tuple  # (key, value) pairs applied to the default config


def _cart(name, title, value_col, t_max, n_t=21):
    return Recipe(
        name=name,
        title=title,
        mode="cart",
        value_col=value_col,
        overrides=(
            ("field", "momentum"),
            ("format", "matrix"),
            ("grid.x", AxisSpec(0.0, 10.0, 21)),
            ("grid.y", AxisSpec.fixed(0.0)),
            ("grid.z", AxisSpec.fixed(0.0)),
            ("times", tuple(i * t_max / (n_t - 1) for i in range(n_t))),
        ),
    )


def _toroid(name, title, value_col, t):
    return Recipe(
        name=name,
        title=title,
        mode="toroid",
        value_col=value_col,
        overrides=(
            ("field", "momentum"),
            ("format", "matrix"),
            ("grid.theta", AxisSpec(0.0, math.pi, 25)),
            ("grid.phi", AxisSpec(0.0, math.pi, 25)),
            ("grid.omega", AxisSpec.fixed(0.0)),
            ("times", (t,)),
        ),
    )


_ALL = (
    _cart("cart-xmom-t1", "x-momentum vs x and t, y=z=0, t to 1", "px", 1.0),
    _cart("cart-xmom-t2", "x-momentum vs x and t, y=z=0, t to 2", "px", 2.0),
    _cart("cart-zmom-t03", "z-momentum vs x and t, y=z=0, t to 0.3", "pz", 0.3),
    _toroid("toroid-xmom-t01", "x-momentum on the toroid, omega=0, t=0.1", "px", 0.1),
    _toroid("toroid-xmom-t2", "x-momentum on the toroid, omega=0, t=2", "px", 2.0),
    _toroid("toroid-xmom-t200", "x-momentum on the toroid, omega=0, t=200", "px", 200.0),
    _toroid("toroid-ymom-t01", "y-momentum on the toroid, omega=0, t=0.1", "py", 0.1),
    _toroid("toroid-ymom-t200", "y-momentum on the toroid, omega=0, t=200", "py", 200.0),
)

RECIPES = {r.name: r for r in _ALL}


def recipe_config(name: str, base: RunConfig | None = None) -> tuple[Recipe, RunConfig]:
    """The pinned config for a named recipe, optionally on top of a base config."""
    if name not in RECIPES:
        raise KeyError(f"unknown recipe {name!r}; known: {', '.join(sorted(RECIPES))}")
    recipe = RECIPES[name]
    cfg = apply_overrides(base if base is not None else default_config(), dict(recipe.overrides))
    return recipe, cfg
