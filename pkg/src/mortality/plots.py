"""Matplotlib figures for the ``trace`` and ``report`` commands."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.patches import Rectangle  # noqa: E402


def trace_figure(rows, names: Sequence[str], tracker: Sequence[int], letters, outf, title=None):
    """Active-state grid: one row per prefix, tracker columns outlined."""
    grid = np.array(
        [[(row.active >> q) & 1 for q in range(len(names))] for row in rows], dtype=float
    )
    height = min(0.25 * len(rows) + 1.5, 40)
    fig, ax = plt.subplots(figsize=(0.45 * len(names) + 2.5, height))
    ax.imshow(grid, cmap="Greys", vmin=0, vmax=1.4, aspect="auto", interpolation="nearest")
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names)
    ax.xaxis.tick_top()
    step = max(1, len(rows) // 40)
    ticks = list(range(0, len(rows), step))
    ax.set_yticks(ticks)
    ax.set_yticklabels(
        [f"{'' if rows[i].letter is None else letters[rows[i].letter]} {rows[i].bin}" for i in ticks],
        fontsize=7,
    )
    for q in tracker:
        ax.add_patch(
            Rectangle((q - 0.5, -0.5), 1, len(rows), fill=False, edgecolor="tab:red", lw=1.2)
        )
    if title:
        ax.set_title(title, pad=24)
    fig.tight_layout()
    fig.savefig(outf, dpi=120)
    plt.close(fig)
    return Path(outf)


def thresholds_figure(table: Sequence[dict], outf):
    """log2 of measured thresholds against the family lower bounds."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    colors = dict(zip(("linear", "ternary", "binary", "dfa-tail"), plt.cm.tab10.colors))
    for family in colors:
        rows = [r for r in table if r["family"] == family]
        if not rows:
            continue
        n = [r["states"] for r in rows]
        ax.plot(n, [np.log2(r["threshold"]) for r in rows], "o-", color=colors[family],
                label=f"{family} threshold")
        ax.plot(n, [np.log2(r["lower_bound"]) for r in rows], "--", color=colors[family],
                alpha=0.6)
    top = max((r["states"] for r in table), default=1)
    ns = np.arange(1, top + 1)
    ax.plot(ns, np.log2(2.0**ns - 1).clip(0), ":", color="k", label="2^n - 1")
    ax.set_xlabel("states n")
    ax.set_ylabel("log2 shortest mortal word length")
    ax.legend(fontsize=8, frameon=False)
    fig.tight_layout()
    fig.savefig(outf, dpi=120)
    plt.close(fig)
    return Path(outf)
