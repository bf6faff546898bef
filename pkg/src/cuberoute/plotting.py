"""Figure rendering for fidelity time series.

Kept separate so the library core never pulls in matplotlib; the CLI
imports this lazily when a figure is requested.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .dynamics import FidelitySeries


def _draw_panel(ax, series: FidelitySeries) -> None:
    ax.plot(series.taus, series.p_return, linestyle=":", color="tab:blue", label="return")
    ax.plot(series.taus, series.p_target, linestyle="-", color="tab:red", label="transfer")
    ax.set_xlim(series.taus[0], series.taus[-1])
    ax.set_ylim(-0.02, 1.02)
    ax.set_title(f"d={series.d}, l={series.l}", fontsize=9)


def save_fidelity_plot(series: FidelitySeries, path: str) -> None:
    """One panel: return probability dotted, transfer probability solid."""
    fig, ax = plt.subplots(figsize=(5.0, 3.2))
    _draw_panel(ax, series)
    ax.set_xlabel("tau")
    ax.set_ylabel("probability")
    ax.legend(loc="center right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_fidelity_grid(series_list: list[FidelitySeries], path: str, ncols: int = 3) -> None:
    """A panel per series, shared axes; used for the all-levels sweep."""
    n = len(series_list)
    nrows = (n + ncols - 1) // ncols
    fig, axes = plt.subplots(nrows, ncols, figsize=(3.2 * ncols, 2.4 * nrows),
                             sharex=True, sharey=True, squeeze=False)
    for i, series in enumerate(series_list):
        _draw_panel(axes[i // ncols][i % ncols], series)
    for j in range(n, nrows * ncols):
        axes[j // ncols][j % ncols].set_axis_off()
    for ax in axes[-1]:
        ax.set_xlabel("tau")
    for row in axes:
        row[0].set_ylabel("probability")
    axes[0][0].legend(loc="center right", fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
