"""Grid evaluation and tabular export.

Row order is fixed and nested (outermost axis slowest; times innermost), so
output bytes depend on the config alone, never on the worker count.  The
matrix format emits gnuplot-ready blocks: one block per value of the first
free axis, one line per value of the second, blank lines in between.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import fields, nse
from .config import RunConfig, ToroidAngles, toroid_map
from .potential import Point3
from .quadrature import NoConvergence

__all__ = ["FormatError", "GridRun", "field_columns", "sample_grid", "export_table"]


class FormatError(ValueError):
    """Requested export format cannot represent the scan layout."""


# columns appended after the coordinates for each field selection
_FIELD_COLUMNS = {
    "momentum": ("px", "py", "pz"),
    "energy": ("energy_x", "energy_y", "energy_z", "energy_total"),
    "pressure": ("pressure_x", "pressure_y", "pressure_z"),
    "divergence": ("div", "div_err"),
    "nse": ("nse_dpx",),
    "compare": ("te_dpx", "nse_dpx", "div", "div_err"),
}


def field_columns(field_name: str) -> tuple[str, ...]:
    return _FIELD_COLUMNS[field_name]


@dataclass(frozen=True)
class GridRun:
    """Evaluated scan: column names, rows of floats, and layout metadata."""

    columns: tuple[str, ...]
    rows: tuple[tuple, ...]
    free_axes: tuple[str, ...]
    header_note: str = ""
    errors: tuple[str, ...] = ()  # per-row message, only present with keep_going


def _coord_tuples(cfg: RunConfig, mode: str):
    """All (coords..., t) tuples in fixed nested order, plus the coordinate columns."""
    if mode == "cart":
        cols = ("x", "y", "z", "t")
        tuples = [
            (x, y, z, t)
            for x in cfg.grid.x.values()
            for y in cfg.grid.y.values()
            for z in cfg.grid.z.values()
            for t in cfg.grid.times
        ]
        return cols, tuples
    if mode == "toroid":
        cols = ("theta", "phi", "omega", "x", "y", "z", "t")
        L = cfg.params.L
        tuples = []
        for th in cfg.toroid.theta.values():
            for ph in cfg.toroid.phi.values():
                for om in cfg.toroid.omega.values():
                    pt = toroid_map(ToroidAngles(th, ph, om), L)
                    for t in cfg.grid.times:
                        tuples.append((th, ph, om, pt.x, pt.y, pt.z, t))
        return cols, tuples
    raise ValueError(f"mode must be 'cart' or 'toroid', got {mode!r}")


def _eval_values(cfg: RunConfig, point: Point3, t: float) -> tuple:
    """Field values at one (point, time) for the configured selection."""
    name = cfg.field_name
    params, quad = cfg.params, cfg.quad
    if name == "momentum":
        mom = fields.momentum_field(point, t, params, quad)
        return (mom.px, mom.py, mom.pz)
    if name == "energy":
        e = fields.energy_field(point, t, params, quad)
        return tuple(e)
    if name == "pressure":
        return tuple(fields.pressure_field(point, t, params, quad))
    if name == "divergence":
        est = nse.divergence(point, t, params, quad, cfg.fd_step)
        return tuple(est)
    if name == "nse":
        return (nse.nse_pressure_gradient_x(point, t, params, quad, cfg.fd_step),)
    if name == "compare":
        te = nse.te_pressure_gradient_x(point, t, params, quad)
        ps = nse.nse_pressure_gradient_x(point, t, params, quad, cfg.fd_step)
        dv = nse.divergence(point, t, params, quad, cfg.fd_step)
        return (te, ps, dv.value, dv.error)
    raise ValueError(f"unknown field selection {name!r}")


def _eval_chunk(args):
    """Worker entry point; must stay module-level for pickling."""
    cfg, mode, keep_going, start, stop = args
    _, tuples = _coord_tuples(cfg, mode)
    out = []
    n_vals = len(field_columns(cfg.field_name))
    for coords in tuples[start:stop]:
        point = Point3(coords[-4], coords[-3], coords[-2])
        t = coords[-1]
        if keep_going:
            try:
                vals = _eval_values(cfg, point, t)
                msg = ""
            except (NoConvergence, ValueError) as exc:
                vals = (math.nan,) * n_vals
                msg = str(exc).replace("\n", " ")
            out.append((coords + vals, msg))
        else:
            out.append((coords + _eval_values(cfg, point, t), ""))
    return out


def sample_grid(
    cfg: RunConfig, mode: str = "cart", workers: int = 1, keep_going: bool = False
) -> GridRun:
    """Evaluate the configured field over the scan grid.

    Evaluation may fan out across processes; rows are assembled in index
    order so the result is identical for any worker count.
    """
    coord_cols, tuples = _coord_tuples(cfg, mode)
    columns = coord_cols + field_columns(cfg.field_name)
    n = len(tuples)
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if workers == 1 or n < 2 * workers:
        results = _eval_chunk((cfg, mode, keep_going, 0, n))
    else:
        bounds = [(n * i) // workers for i in range(workers + 1)]
        chunks = [
            (cfg, mode, keep_going, bounds[i], bounds[i + 1])
            for i in range(workers)
            if bounds[i] < bounds[i + 1]
        ]
        results = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_eval_chunk, chunks):
                results.extend(part)
    free = cfg.grid.free_axes() if mode == "cart" else cfg.toroid.free_axes(cfg.grid.times)
    note = nse.EQUATION_FORMS_NOTE if cfg.field_name in ("nse", "compare") else ""
    return GridRun(
        columns=columns,
        rows=tuple(r for r, _ in results),
        free_axes=free,
        header_note=note,
        errors=tuple(m for _, m in results) if keep_going else (),
    )


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def export_table(run: GridRun, fmt: str) -> bytes:
    """Serialize a GridRun: `csv` rows or gnuplot `matrix` blocks (LF endings)."""
    if fmt == "csv":
        return _export_csv(run)
    if fmt == "matrix":
        return _export_matrix(run)
    raise FormatError(f"format must be 'csv' or 'matrix', got {fmt!r}")


def _export_csv(run: GridRun) -> bytes:
    lines = []
    if run.header_note:
        lines.append("# " + run.header_note)
    cols = run.columns + (("error",) if run.errors else ())
    lines.append(",".join(cols))
    for i, row in enumerate(run.rows):
        cells = [_fmt(v) for v in row]
        if run.errors:
            cells.append(run.errors[i])
        lines.append(",".join(cells))
    return ("\n".join(lines) + "\n").encode()


def _export_matrix(run: GridRun) -> bytes:
    if len(run.free_axes) != 2:
        raise FormatError(
            f"matrix output needs exactly 2 free axes, got {len(run.free_axes)} "
            f"({', '.join(run.free_axes) or 'none'})"
        )
    a1, a2 = run.free_axes
    i1 = run.columns.index(a1)
    i2 = run.columns.index(a2)
    value_idx = _value_column_indices(run)
    lines = []
    if run.header_note:
        lines.append("# " + run.header_note)
    lines.append(
        "# columns: " + " ".join([a1, a2] + [run.columns[i] for i in value_idx])
    )
    prev_outer = None
    for row in run.rows:
        if prev_outer is not None and row[i1] != prev_outer:
            lines.append("")
        prev_outer = row[i1]
        cells = [_fmt(row[i1]), _fmt(row[i2])] + [_fmt(row[i]) for i in value_idx]
        lines.append(" ".join(cells))
    return ("\n".join(lines) + "\n").encode()


def _value_column_indices(run: GridRun) -> list[int]:
    coord = {"x", "y", "z", "t", "theta", "phi", "omega"}
    return [i for i, c in enumerate(run.columns) if c not in coord]
