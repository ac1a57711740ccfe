"""Figure rendering for experiment reports.

Reads the delimited report produced by the harness and renders summary
figures next to it: landmark counts vs eps, selection/total time vs eps, and
the log-scale bottleneck distances vs eps against the 3 ln 3 ceiling.
Figures are a downstream view of ``report.csv``; the CSV stays the canonical
output.
"""

from __future__ import annotations

import csv
import math
from collections import defaultdict
from pathlib import Path
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .diagrams import LOG3_INTERLEAVING_BOUND

__all__ = ["load_report_rows", "render_report_figures"]

_STYLE = {
    "greedy": dict(color="#1f77b4", marker="o"),
    "iterative": dict(color="#d62728", marker="s"),
    "spt_pruning": dict(color="#2ca02c", marker="^"),
    "maxmin": dict(color="#9467bd", marker="D"),
    "random": dict(color="#8c564b", marker="v"),
}


def load_report_rows(report_csv: str | Path) -> list[dict]:
    """Rows of a report CSV with numeric fields parsed."""
    rows = []
    with open(report_csv, newline="", encoding="utf-8") as fh:
        for rec in csv.DictReader(fh):
            rows.append(
                {
                    "algo": rec["algo"],
                    "eps": float(rec["eps"]),
                    "seed": int(rec["seed"]),
                    "n_landmarks": int(rec["n_landmarks"]),
                    "landmark_ms": float(rec["landmark_ms"]),
                    "ph_ms": float(rec["ph_ms"]),
                    "total_ms": float(rec["total_ms"]),
                    "bottleneck_d0": float(rec["bottleneck_d0"]),
                    "bottleneck_d1": float(rec["bottleneck_d1"]),
                }
            )
    return rows


def _seed_means(rows: Iterable[dict], key: str) -> dict[str, tuple[list, list]]:
    """Per algorithm: eps grid and seed-averaged values of ``key``."""
    acc: dict[tuple[str, float], list[float]] = defaultdict(list)
    for row in rows:
        acc[(row["algo"], row["eps"])].append(row[key])
    series: dict[str, tuple[list, list]] = {}
    for (algo, eps), values in sorted(acc.items()):
        xs, ys = series.setdefault(algo, ([], []))
        xs.append(eps)
        ys.append(sum(values) / len(values))
    return series


def _line_plot(ax, series: dict[str, tuple[list, list]], ylabel: str) -> None:
    for algo, (xs, ys) in series.items():
        style = _STYLE.get(algo, {})
        ax.plot(xs, ys, label=algo, markersize=4, **style)
    ax.set_xlabel(r"$\varepsilon$")
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)


def render_report_figures(report_csv: str | Path, out_dir: str | Path) -> list[Path]:
    """Render the summary figures for a report; returns the written paths."""
    rows = load_report_rows(report_csv)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    _line_plot(ax, _seed_means(rows, "n_landmarks"), "landmarks selected")
    ax.set_title("Landmark count vs eps")
    fig.tight_layout()
    path = out / "landmarks_vs_eps.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    fig, axes = plt.subplots(1, 2, figsize=(8.6, 3.4))
    _line_plot(axes[0], _seed_means(rows, "landmark_ms"), "selection time (ms)")
    axes[0].set_title("Landmark selection time")
    _line_plot(axes[1], _seed_means(rows, "total_ms"), "total time (ms)")
    axes[1].set_title("Total cell time")
    fig.tight_layout()
    path = out / "time_vs_eps.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    d0 = _seed_means(rows, "bottleneck_d0")
    d1 = _seed_means(rows, "bottleneck_d1")
    for algo, (xs, ys) in d0.items():
        style = _STYLE.get(algo, {})
        ax.plot(xs, ys, linestyle="--", markersize=4, label=f"{algo} dim 0", **style)
    for algo, (xs, ys) in d1.items():
        style = _STYLE.get(algo, {})
        ax.plot(xs, ys, linestyle="-", markersize=4, label=f"{algo} dim 1", **style)
    ax.axhline(
        LOG3_INTERLEAVING_BOUND,
        color="black",
        linestyle=":",
        label=r"$3\,\ln 3$ bound",
    )
    ax.set_xlabel(r"$\varepsilon$")
    ax.set_ylabel("log-scale bottleneck distance")
    ax.set_title("Witness vs Rips partial diagrams")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=7)
    fig.tight_layout()
    path = out / "bottleneck_vs_eps.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)
    return written
