"""Figure rendering for sweep, search and comparison output.

Each renderer takes the rows produced by :mod:`realign.sweeps` and
writes a PNG next to the delimited output.  The Agg backend is forced
so rendering works headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _surface(rows, value):
    a_vals = np.array(sorted({row.a for row in rows}))
    p_vals = np.array(sorted({row.p for row in rows}))
    z = np.full((p_vals.size, a_vals.size), np.nan)
    a_index = {a: i for i, a in enumerate(a_vals)}
    p_index = {p: i for i, p in enumerate(p_vals)}
    for row in rows:
        z[p_index[row.p], a_index[row.a]] = value(row)
    return a_vals, p_vals, z


def render_sweep(rows, path, *, title: str, flag_missed: bool = False) -> None:
    """Heatmap of f = max(0, log N) over the (a, p) grid.

    With ``flag_missed`` the grid points that are NPT-entangled but
    have f = 0 are overlaid as dots.
    """
    a_vals, p_vals, z = _surface(rows, lambda row: row.f)
    fig, ax = plt.subplots(figsize=(7, 5))
    mesh = ax.pcolormesh(a_vals, p_vals, z, shading="nearest", cmap="viridis")
    fig.colorbar(mesh, ax=ax, label="f = max(0, log N)")
    if flag_missed:
        xs = [row.a for row in rows if row.npt_f0]
        ys = [row.p for row in rows if row.npt_f0]
        if xs:
            ax.plot(xs, ys, ".", color="crimson", markersize=2,
                    label="NPT entangled, f = 0")
            ax.legend(loc="upper right", fontsize=8)
    ax.set_xlabel("a")
    ax.set_ylabel("p")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_search(rows, path, *, title: str) -> None:
    """Histogram of log N over the random sample, split by PPT verdict."""
    log_n = np.array([row.log_n for row in rows])
    npt = np.array([row.ppt_detected for row in rows])
    fig, ax = plt.subplots(figsize=(7, 5))
    lo = float(log_n.min())
    bins = np.linspace(lo, max(float(log_n.max()), 1e-6, lo + 1e-9), 60)
    ax.hist(log_n[~npt], bins=bins, alpha=0.6, label="PPT (no NPT proof)")
    ax.hist(log_n[npt], bins=bins, alpha=0.6, label="NPT")
    ax.axvline(0.0, color="black", linewidth=1, linestyle="--",
               label="detection edge log N = 0")
    ax.set_xlabel("log N")
    ax.set_ylabel("samples")
    ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_compare(rows, path, *, title: str) -> None:
    """Measure comparison: line plot for 1-D grids, (N-1) - E_f heatmap else."""
    one_dim = all(row.p is None for row in rows)
    fig, ax = plt.subplots(figsize=(7, 5))
    if one_dim:
        xs = np.array([row.a for row in rows])
        ax.plot(xs, [row.log_n for row in rows], label="log N")
        ax.plot(xs, [row.n_minus_one for row in rows], label="N - 1")
        ax.plot(xs, [row.e_f for row in rows], label="E_f")
        ax.set_xlabel("family parameter")
        ax.legend(fontsize=8)
    else:
        a_vals, p_vals, z = _surface(rows, lambda row: row.n_minus_one - row.e_f)
        mesh = ax.pcolormesh(a_vals, p_vals, z, shading="nearest", cmap="coolwarm")
        fig.colorbar(mesh, ax=ax, label="(N - 1) - E_f")
        ax.set_xlabel("a")
        ax.set_ylabel("p")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
