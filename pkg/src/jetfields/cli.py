"""Command-line interface.

Subcommands mirror the library surface: `fields`, `divergence`, `nse` and
`compare` scan the Cartesian grid, `toroid` scans the periodic embedding,
`selfcheck` runs the oracle suite, and `figures` writes the canonical plot
gallery (delimited data plus rendered PNGs).

Exit codes: 0 success, 1 validation/usage errors, 2 numerical
non-convergence.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import (
    FIELD_CHOICES,
    FORMAT_CHOICES,
    ParseError,
    RunConfig,
    ValidationError,
    apply_overrides,
    default_config,
    parse_config,
    _parse_axis,
    _parse_float,
    _parse_int,
    _parse_times,
)
from .fields import UnsupportedMass
from .gridrun import FormatError, export_table, sample_grid
from .quadrature import NoConvergence

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NO_CONVERGENCE = 2

_FLOAT_KEYS = ("a", "g", "m", "L", "p0", "nu", "fd_step", "rel_tol", "abs_tol")
_INT_KEYS = ("nodes_per_panel", "max_panels")
_AXIS_KEYS = ("grid.x", "grid.y", "grid.z", "grid.theta", "grid.phi", "grid.omega")


def _add_common(sub: argparse.ArgumentParser, with_field: bool = False):
    sub.add_argument("--config", help="config file (`key = value` lines)")
    sub.add_argument("-o", "--output", help="output file (default: stdout)")
    sub.add_argument("--format", choices=FORMAT_CHOICES, help="csv or gnuplot matrix")
    sub.add_argument("--workers", type=int, default=1, help="parallel evaluation processes")
    sub.add_argument(
        "--keep-going",
        action="store_true",
        help="record NaN plus an error column instead of aborting on a bad row",
    )
    sub.add_argument("--plot", help="also render the scan to this PNG file")
    if with_field:
        sub.add_argument("--field", choices=FIELD_CHOICES, help="field selection")
    for key in _FLOAT_KEYS:
        sub.add_argument(f"--{key.replace('_', '-')}", dest=key, help=f"override `{key}`")
    for key in _INT_KEYS:
        sub.add_argument(f"--{key.replace('_', '-')}", dest=key, help=f"override `{key}`")
    for key in _AXIS_KEYS:
        flag = "--" + key.replace(".", "-")
        sub.add_argument(flag, dest=key, help=f"override `{key}` (value or min:max:count)")
    sub.add_argument("--times", help="override `times` (list or min:max:count)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jetfields",
        description="Momentum, energy and pressure fields of a Gaussian-interaction "
        "gas jet in a box, with momentum-balance cross-checks.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("fields", help="momentum/energy/pressure over the Cartesian grid")
    _add_common(p, with_field=True)
    p = subs.add_parser("divergence", help="velocity divergence over the Cartesian grid")
    _add_common(p)
    p = subs.add_parser("nse", help="momentum-balance pressure gradient over the grid")
    _add_common(p)
    p = subs.add_parser("compare", help="direct vs momentum-balance pressure gradients")
    _add_common(p)
    p = subs.add_parser("toroid", help="evaluate a field over the periodic angle grid")
    _add_common(p, with_field=True)

    p = subs.add_parser("selfcheck", help="run the brute-force oracle suite")
    p.add_argument("--config", help="config file (`key = value` lines)")

    p = subs.add_parser("figures", help="write the canonical figure datasets and PNGs")
    p.add_argument("--outdir", default="figures", help="output directory")
    p.add_argument("--only", help="comma-separated recipe names (default: all)")
    p.add_argument("--no-png", action="store_true", help="write data files only")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--list", action="store_true", help="list recipe names and exit")
    return parser


def _flag_overrides(args) -> dict:
    overrides = {}
    for key in _FLOAT_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            overrides[key] = _parse_float(key, v)
    for key in _INT_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            overrides[key] = _parse_int(key, v)
    for key in _AXIS_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            overrides[key] = _parse_axis(key, v)
    if getattr(args, "times", None) is not None:
        overrides["times"] = _parse_times("times", args.times)
    if getattr(args, "field", None) is not None:
        overrides["field"] = args.field
    if getattr(args, "format", None) is not None:
        overrides["format"] = args.format
    return overrides


def _load_config(args) -> RunConfig:
    cfg = default_config()
    path = getattr(args, "config", None)
    if path:
        cfg = parse_config(Path(path).read_text(encoding="utf-8"))
    return apply_overrides(cfg, _flag_overrides(args))


def _emit(data: bytes, output: str | None):
    if output:
        Path(output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)


def _run_scan(args, mode: str, forced_field: str | None = None) -> int:
    cfg = _load_config(args)
    if forced_field is not None:
        cfg = apply_overrides(cfg, {"field": forced_field})
    run = sample_grid(cfg, mode=mode, workers=args.workers, keep_going=args.keep_going)
    _emit(export_table(run, cfg.format), args.output)
    if args.plot:
        from .plotting import render_run

        value_col = _default_plot_column(cfg.field_name)
        render_run(run, value_col, args.plot)
    return EXIT_OK


def _default_plot_column(field_name: str) -> str:
    return {
        "momentum": "px",
        "energy": "energy_x",
        "pressure": "pressure_x",
        "divergence": "div",
        "nse": "nse_dpx",
        "compare": "te_dpx",
    }[field_name]


def _run_selfcheck(args) -> int:
    cfg = _load_config(args) if getattr(args, "config", None) else default_config()
    from .selfcheck import run_selfcheck

    ok = run_selfcheck(cfg.params, cfg.quad)
    return EXIT_OK if ok else EXIT_VALIDATION


def _run_figures(args) -> int:
    from .figures import RECIPES, recipe_config

    if args.list:
        for name in RECIPES:
            print(f"{name}: {RECIPES[name].title}")
        return EXIT_OK
    names = list(RECIPES) if not args.only else [s.strip() for s in args.only.split(",")]
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name in names:
        try:
            recipe, cfg = recipe_config(name)
        except KeyError as exc:
            print(exc.args[0], file=sys.stderr)
            return EXIT_VALIDATION
        run = sample_grid(cfg, mode=recipe.mode, workers=args.workers)
        (outdir / f"{name}.dat").write_bytes(export_table(run, "matrix"))
        if not args.no_png:
            from .plotting import render_run

            render_run(run, recipe.value_col, outdir / f"{name}.png", title=recipe.title)
        print(f"wrote {outdir / name}.dat" + ("" if args.no_png else f" and {outdir / name}.png"))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "fields":
            return _run_scan(args, "cart")
        if args.command == "divergence":
            return _run_scan(args, "cart", forced_field="divergence")
        if args.command == "nse":
            return _run_scan(args, "cart", forced_field="nse")
        if args.command == "compare":
            return _run_scan(args, "cart", forced_field="compare")
        if args.command == "toroid":
            return _run_scan(args, "toroid")
        if args.command == "selfcheck":
            return _run_selfcheck(args)
        if args.command == "figures":
            return _run_figures(args)
        raise AssertionError(f"unhandled command {args.command!r}")
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (ParseError, ValidationError, FormatError, UnsupportedMass, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    raise SystemExit(main())
