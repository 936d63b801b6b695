"""Figure rendering for the CLI report paths.

Matplotlib is imported lazily inside each helper so library users and plain
CLI runs never pay for, or even require, a plotting backend; the CLI calls
in here only when a plot directory was requested. Rendering always goes
through the Agg backend straight to files.
"""

from __future__ import annotations

import math
import re
from pathlib import Path
from typing import Sequence

__all__ = ["safe_name", "plot_nll_curve", "plot_fed_rounds"]


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    return plt


def safe_name(column: str) -> str:
    """A column name reduced to filesystem-safe characters."""
    cleaned = re.sub(r"[^A-Za-z0-9_.-]+", "_", column).strip("_")
    return cleaned or "column"


def plot_nll_curve(
    path: str | Path,
    title: str,
    series: Sequence[tuple[str, Sequence[float], Sequence[float]]],
    lambda_star: float | None = None,
) -> None:
    """One NLL-vs-lambda line per (label, lambdas, values) triple.

    Non-finite values break the line rather than distorting the axis, so
    overflow regions show up as gaps.
    """
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for label, xs, ys in series:
        drawable = [y if math.isfinite(y) else math.nan for y in ys]
        ax.plot(xs, drawable, linewidth=1.5, label=label)
    if lambda_star is not None:
        ax.axvline(
            lambda_star,
            color="crimson",
            linestyle="--",
            linewidth=1.0,
            label=f"lambda* = {lambda_star:.6g}",
        )
    ax.set_xlabel("lambda")
    ax.set_ylabel("negative log-likelihood")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_fed_rounds(
    path: str | Path,
    title: str,
    rounds: Sequence[int],
    lambdas: Sequence[float],
) -> None:
    """Lambda values probed per federated round.

    Brent mode probes one lambda per round and draws as a connected path;
    grid mode probes many per round and falls back to markers only.
    """
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    connected = len(set(rounds)) == len(rounds)
    style = {"linewidth": 1.0} if connected else {"linestyle": "none"}
    ax.plot(rounds, lambdas, marker="o", markersize=3, **style)
    ax.set_xlabel("round")
    ax.set_ylabel("lambda probed")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
