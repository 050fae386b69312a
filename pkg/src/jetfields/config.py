"""Run configuration: model constants, quadrature settings and scan grids.

Config files are line-oriented `key = value` pairs with `#` comments.  The
defaults reproduce the canonical plot parameters used throughout the figure
gallery: a=1, g=1, m=1, L=10, p0=10, nu=1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .potential import PhysParams, Point3
from .quadrature import QuadratureSpec

__all__ = [
    "ParseError",
    "ValidationError",
    "AxisSpec",
    "GridSpec",
    "ToroidGridSpec",
    "ToroidAngles",
    "RunConfig",
    "FIELD_CHOICES",
    "FORMAT_CHOICES",
    "toroid_map",
    "parse_config",
    "render_config",
    "default_config",
    "apply_overrides",
]

FIELD_CHOICES = ("momentum", "energy", "pressure", "divergence", "nse", "compare")
FORMAT_CHOICES = ("csv", "matrix")

_PARAM_KEYS = ("a", "g", "m", "L", "p0", "nu")
_QUAD_KEYS = ("nodes_per_panel", "max_panels", "rel_tol", "abs_tol")
_CART_AXIS_KEYS = ("grid.x", "grid.y", "grid.z")
_ANGLE_AXIS_KEYS = ("grid.theta", "grid.phi", "grid.omega")
_OTHER_KEYS = ("times", "field", "format", "fd_step")
KNOWN_KEYS = _PARAM_KEYS + _QUAD_KEYS + _CART_AXIS_KEYS + _ANGLE_AXIS_KEYS + _OTHER_KEYS


class ParseError(ValueError):
    """Config text that is not `key = value` lines; carries line and column."""

    def __init__(self, message: str, line: int, col: int = 1):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class ValidationError(ValueError):
    """A named key violated its constraint (or is unknown)."""

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass(frozen=True)
class AxisSpec:
    """One scan axis: fixed value (count = 1) or an inclusive range."""

    lo: float
    hi: float
    count: int

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("axis bounds must be finite")
        if self.count < 1:
            raise ValueError(f"count must be >= 1, got {self.count!r}")
        if self.lo > self.hi:
            raise ValueError(f"min {self.lo!r} exceeds max {self.hi!r}")
        if self.count == 1 and self.lo != self.hi:
            raise ValueError("a single-sample axis must have min == max")

    @classmethod
    def fixed(cls, v: float) -> "AxisSpec":
        return cls(v, v, 1)

    @property
    def free(self) -> bool:
        return self.count > 1

    def values(self) -> tuple[float, ...]:
        if self.count == 1:
            return (self.lo,)
        return tuple(float(v) for v in np.linspace(self.lo, self.hi, self.count))

    def render(self) -> str:
        if self.count == 1:
            return _fmt(self.lo)
        return f"{_fmt(self.lo)}:{_fmt(self.hi)}:{self.count}"


@dataclass(frozen=True)
class GridSpec:
    """Cartesian scan window plus shared evaluation times."""

    x: AxisSpec
    y: AxisSpec
    z: AxisSpec
    times: tuple[float, ...]

    def __post_init__(self):
        if not self.times:
            raise ValueError("at least one time is required")
        for t in self.times:
            if not math.isfinite(t) or t < 0:
                raise ValueError(f"times must be finite and >= 0, got {t!r}")

    def free_axes(self) -> tuple[str, ...]:
        names = [n for n in ("x", "y", "z") if getattr(self, n).free]
        if len(self.times) > 1:
            names.append("t")
        return tuple(names)

    def points(self) -> list[Point3]:
        return [
            Point3(x, y, z)
            for x in self.x.values()
            for y in self.y.values()
            for z in self.z.values()
        ]


@dataclass(frozen=True)
class ToroidGridSpec:
    """Angle scan for the periodic embedding; all angles live in [0, pi].

    Evaluation times are shared with the Cartesian grid (the `times` key).
    """

    theta: AxisSpec
    phi: AxisSpec
    omega: AxisSpec

    def __post_init__(self):
        for name in ("theta", "phi", "omega"):
            ax = getattr(self, name)
            if ax.lo < 0 or ax.hi > math.pi:
                raise ValueError(f"{name} must stay within [0, pi]")

    def free_axes(self, times: tuple[float, ...]) -> tuple[str, ...]:
        names = [n for n in ("theta", "phi", "omega") if getattr(self, n).free]
        if len(times) > 1:
            names.append("t")
        return tuple(names)


@dataclass(frozen=True)
class ToroidAngles:
    theta: float
    phi: float
    omega: float

    def __post_init__(self):
        for name in ("theta", "phi", "omega"):
            v = getattr(self, name)
            if not (0.0 <= v <= math.pi):
                raise ValueError(f"{name} must be in [0, pi], got {v!r}")


def toroid_map(angles: ToroidAngles, L: float) -> Point3:
    """Periodic embedding (L sin(theta), L sin(phi), L sin(omega))."""
    return Point3(
        L * math.sin(angles.theta), L * math.sin(angles.phi), L * math.sin(angles.omega)
    )


def _default_grid() -> GridSpec:
    return GridSpec(
        x=AxisSpec(0.0, 10.0, 21),
        y=AxisSpec.fixed(0.0),
        z=AxisSpec.fixed(0.0),
        times=tuple(float(t) for t in np.linspace(0.0, 2.0, 21)),
    )


def _default_toroid() -> ToroidGridSpec:
    return ToroidGridSpec(
        theta=AxisSpec(0.0, math.pi, 25),
        phi=AxisSpec(0.0, math.pi, 25),
        omega=AxisSpec.fixed(0.0),
    )


@dataclass(frozen=True)
class RunConfig:
    """Everything one CLI run needs; immutable and picklable for worker fan-out."""

    params: PhysParams = field(default_factory=PhysParams)
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    grid: GridSpec = field(default_factory=_default_grid)
    toroid: ToroidGridSpec = field(default_factory=_default_toroid)
    field_name: str = "momentum"
    format: str = "csv"
    fd_step: float | None = None


def default_config() -> RunConfig:
    return RunConfig()


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _parse_float(key, tok):
    try:
        return float(tok)
    except ValueError:
        raise ValidationError(key, f"expected a number, got {tok!r}") from None


def _parse_int(key, tok):
    try:
        return int(tok)
    except ValueError:
        raise ValidationError(key, f"expected an integer, got {tok!r}") from None


def _parse_axis(key, tok):
    parts = tok.split(":")
    try:
        if len(parts) == 1:
            return AxisSpec.fixed(_parse_float(key, parts[0]))
        if len(parts) == 3:
            return AxisSpec(
                _parse_float(key, parts[0]),
                _parse_float(key, parts[1]),
                _parse_int(key, parts[2]),
            )
    except ValidationError:
        raise
    except ValueError as exc:
        raise ValidationError(key, str(exc)) from None
    raise ValidationError(key, f"expected `value` or `min:max:count`, got {tok!r}")


def _parse_times(key, tok):
    if ":" in tok and "," not in tok:
        return _parse_axis(key, tok).values()
    return tuple(_parse_float(key, part.strip()) for part in tok.split(","))


def parse_config(text: str, base: RunConfig | None = None) -> RunConfig:
    """Parse `key = value` lines into a validated RunConfig.

    Omitted keys keep their defaults (or the values of `base`); unknown keys
    and constraint violations raise ValidationError, malformed lines raise
    ParseError with position info.
    """
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ParseError("expected `key = value`", lineno, line.find(stripped[0]) + 1)
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise ParseError("missing key before `=`", lineno)
        if not value:
            raise ParseError(f"missing value for key {key!r}", lineno, line.find("=") + 2)
        if key not in KNOWN_KEYS:
            raise ValidationError(key, "unknown key")
        raw[key] = value

    overrides = {}
    for key, tok in raw.items():
        if key in ("nodes_per_panel", "max_panels"):
            overrides[key] = _parse_int(key, tok)
        elif key in ("field", "format"):
            overrides[key] = tok
        elif key == "times":
            overrides[key] = _parse_times(key, tok)
        elif key.startswith("grid."):
            overrides[key] = _parse_axis(key, tok)
        else:
            overrides[key] = _parse_float(key, tok)
    return apply_overrides(base if base is not None else default_config(), overrides)


def _rebuild(key: str, fn):
    try:
        return fn()
    except ValueError as exc:
        raise ValidationError(key, str(exc)) from None


def apply_overrides(cfg: RunConfig, overrides: dict) -> RunConfig:
    """Rebuild a RunConfig with key -> parsed-value overrides.

    Shared by config files and CLI flags (flags win by being applied last).
    Raises ValidationError naming the offending key.
    """
    params, quad, grid, toroid = cfg.params, cfg.quad, cfg.grid, cfg.toroid
    field_name, fmt, fd_step = cfg.field_name, cfg.format, cfg.fd_step
    for key, val in overrides.items():
        if key in _PARAM_KEYS:
            params = _rebuild(key, lambda: replace(params, **{key: val}))
        elif key in _QUAD_KEYS:
            quad = _rebuild(key, lambda: replace(quad, **{key: val}))
        elif key in _CART_AXIS_KEYS:
            grid = _rebuild(key, lambda: replace(grid, **{key.split(".", 1)[1]: val}))
        elif key in _ANGLE_AXIS_KEYS:
            toroid = _rebuild(key, lambda: replace(toroid, **{key.split(".", 1)[1]: val}))
        elif key == "times":
            grid = _rebuild(key, lambda: replace(grid, times=tuple(val)))
        elif key == "field":
            if val not in FIELD_CHOICES:
                raise ValidationError(key, f"must be one of {', '.join(FIELD_CHOICES)}")
            field_name = val
        elif key == "format":
            if val not in FORMAT_CHOICES:
                raise ValidationError(key, f"must be one of {', '.join(FORMAT_CHOICES)}")
            fmt = val
        elif key == "fd_step":
            if val is not None and not (math.isfinite(val) and val > 0):
                raise ValidationError(key, f"must be > 0, got {val!r}")
            fd_step = val
        else:
            raise ValidationError(key, "unknown key")
    return RunConfig(
        params=params,
        quad=quad,
        grid=grid,
        toroid=toroid,
        field_name=field_name,
        format=fmt,
        fd_step=fd_step,
    )


def render_config(cfg: RunConfig) -> str:
    """Emit a config file that parses back to an equal RunConfig."""
    lines = [
        f"a = {_fmt(cfg.params.a)}",
        f"g = {_fmt(cfg.params.g)}",
        f"m = {_fmt(cfg.params.m)}",
        f"L = {_fmt(cfg.params.L)}",
        f"p0 = {_fmt(cfg.params.p0)}",
        f"nu = {_fmt(cfg.params.nu)}",
        f"nodes_per_panel = {cfg.quad.nodes_per_panel}",
        f"max_panels = {cfg.quad.max_panels}",
        f"rel_tol = {_fmt(cfg.quad.rel_tol)}",
        f"abs_tol = {_fmt(cfg.quad.abs_tol)}",
        f"grid.x = {cfg.grid.x.render()}",
        f"grid.y = {cfg.grid.y.render()}",
        f"grid.z = {cfg.grid.z.render()}",
        f"grid.theta = {cfg.toroid.theta.render()}",
        f"grid.phi = {cfg.toroid.phi.render()}",
        f"grid.omega = {cfg.toroid.omega.render()}",
        "times = " + ",".join(_fmt(t) for t in cfg.grid.times),
        f"field = {cfg.field_name}",
        f"format = {cfg.format}",
    ]
    if cfg.fd_step is not None:
        lines.append(f"fd_step = {_fmt(cfg.fd_step)}")
    return "\n".join(lines) + "\n"
