"""Matplotlib rendering of grid runs to image files.

Figures are a convenience layer on top of the delimited output: the data
files stay the deterministic interface, the PNGs just save a trip through
gnuplot.  matplotlib is imported lazily so data-only runs never pay for it.
"""

from __future__ import annotations

import numpy as np

from .gridrun import GridRun

__all__ = ["render_run"]


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def render_run(run: GridRun, value_col: str, path, title: str = "") -> None:
    """Render a 1- or 2-free-axis run to an image file.

    Two free axes become a 3-D surface, one becomes a line plot.  More (or
    zero) free axes have no natural figure and raise ValueError.
    """
    if value_col not in run.columns:
        raise ValueError(f"no column {value_col!r} in run (have {', '.join(run.columns)})")
    vi = run.columns.index(value_col)
    plt = _pyplot()
    if len(run.free_axes) == 2:
        a1, a2 = run.free_axes
        i1, i2 = run.columns.index(a1), run.columns.index(a2)
        v1 = sorted({row[i1] for row in run.rows})
        v2 = sorted({row[i2] for row in run.rows})
        grid = np.full((len(v1), len(v2)), np.nan)
        pos1 = {v: i for i, v in enumerate(v1)}
        pos2 = {v: i for i, v in enumerate(v2)}
        for row in run.rows:
            grid[pos1[row[i1]], pos2[row[i2]]] = row[vi]
        A1, A2 = np.meshgrid(np.asarray(v1), np.asarray(v2), indexing="ij")
        fig = plt.figure(figsize=(7.0, 5.2))
        ax = fig.add_subplot(projection="3d")
        ax.plot_surface(A1, A2, grid, cmap="viridis", linewidth=0.2, edgecolor="k", alpha=0.95)
        ax.set_xlabel(a1)
        ax.set_ylabel(a2)
        ax.set_zlabel(value_col)
    elif len(run.free_axes) == 1:
        a1 = run.free_axes[0]
        i1 = run.columns.index(a1)
        xs = [row[i1] for row in run.rows]
        ys = [row[vi] for row in run.rows]
        fig, ax = plt.subplots(figsize=(6.4, 4.2))
        ax.plot(xs, ys, "-o", ms=3)
        ax.set_xlabel(a1)
        ax.set_ylabel(value_col)
        ax.grid(True, alpha=0.4)
    else:
        raise ValueError(
            f"plots need 1 or 2 free axes, this run has {len(run.free_axes)}"
        )
    if title:
        ax.set_title(title)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
