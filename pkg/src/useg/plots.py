"""Figure rendering for evaluation and sweep reports (headless)."""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .metrics import Metrics

__all__ = ["plot_metrics", "plot_sweep"]

_SERIES = (
    ("P", "precision"),
    ("R", "recall"),
    ("F1", "f1"),
    ("Acc", "accuracy"),
)


def plot_metrics(rows: Sequence[tuple[str, Metrics]], path) -> None:
    """Grouped bar chart of P/R/F1/Acc per labelled row."""
    fig, ax = plt.subplots(figsize=(1.6 + 1.8 * len(rows), 4.0))
    group_width = 0.8
    bar_width = group_width / len(_SERIES)
    for j, (name, attr) in enumerate(_SERIES):
        xs = [i - group_width / 2 + (j + 0.5) * bar_width
              for i in range(len(rows))]
        ys = [100 * getattr(m, attr) for _, m in rows]
        ax.bar(xs, ys, width=bar_width, label=name)
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels([label for label, _ in rows])
    ax.set_ylabel("%")
    ax.set_ylim(0, 100)
    ax.set_title("Segmentation quality")
    ax.legend(ncol=len(_SERIES), fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_sweep(rows: Sequence[tuple[str, Metrics]], path) -> None:
    """P/R/F1/Acc as lines over the window settings, in sweep order."""
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    xs = range(len(rows))
    for name, attr in _SERIES:
        ax.plot(xs, [100 * getattr(m, attr) for _, m in rows],
                marker="o", label=name)
    ax.set_xticks(list(xs))
    ax.set_xticklabels([label for label, _ in rows])
    ax.set_xlabel("window")
    ax.set_ylabel("%")
    ax.set_title("Window sweep")
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
