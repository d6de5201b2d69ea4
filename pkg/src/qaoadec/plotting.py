"""Figure rendering for the report-producing commands.

Each helper writes one PNG next to the delimited output it illustrates:
error-rate curves against the bounded-distance reference, coset
distribution comparisons, and per-syndrome objective summaries.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .decoder import CurvePoint
from .distributions import DistributionReport


def save_curve_figure(
    points: list[CurvePoint],
    bdd: list[tuple[float, float]] | None,
    path: str | Path,
    title: str | None = None,
) -> None:
    fig, ax = plt.subplots(figsize=(6, 4.5))
    eps = [pt.epsilon for pt in points]
    rate = [pt.rate for pt in points]
    yerr_lo = [pt.rate - pt.ci_low for pt in points]
    yerr_hi = [pt.ci_high - pt.rate for pt in points]
    label = f"QAOA {points[0].decoder} (p={points[0].p}, T={points[0].T})" if points else "QAOA"
    ax.errorbar(eps, rate, yerr=[yerr_lo, yerr_hi], fmt="o-", capsize=3, label=label)
    if bdd:
        ax.plot([e for e, _ in bdd], [r for _, r in bdd], "k--", label="BDD reference")
    ax.set_xlabel("channel error rate")
    ax.set_ylabel("block error rate")
    ax.set_yscale("log")
    if title:
        ax.set_title(title)
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_distribution_figure(report: DistributionReport, path: str | Path) -> None:
    fig, ax = plt.subplots(figsize=(8, 4.5))
    u = range(len(report.posterior.probs))
    ax.bar(u, report.posterior.probs, width=1.0, alpha=0.55, label="channel posterior P")
    ax.bar(u, report.qaoa.probs, width=0.5, alpha=0.75, label=f"QAOA output Q (p={report.p})")
    ax.set_xlabel("coset label u (decimal)")
    ax.set_ylabel("probability")
    ax.set_title(
        f"{report.code} | eps={report.epsilon:g} | JS={report.js:.4g}"
    )
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_objective_figure(
    labels: list[str], values: list[float], path: str | Path, title: str | None = None
) -> None:
    fig, ax = plt.subplots(figsize=(max(5, 0.6 * len(labels)), 4))
    ax.bar(range(len(labels)), values)
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=60, ha="right", fontsize=8)
    ax.set_ylabel("normalized objective")
    ax.set_ylim(0, 1.05)
    if title:
        ax.set_title(title)
    ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
