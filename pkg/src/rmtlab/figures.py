"""Figure rendering for the experiment report path.

One or two PNGs per run, next to the CSV: tail experiments get a log-log
CDF panel with the fitted slope, scalar experiments an errorbar-vs-n
panel against theory.  PNG metadata is stripped so reruns are
byte-identical.
"""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .experiments import ExperimentResult

_SAVE_KW = dict(dpi=150, metadata={"Software": None})


def _tail_figure(result: ExperimentResult, path: Path) -> None:
    groups = defaultdict(list)
    for rec in result.records:
        if rec.epsilon is not None:
            groups[(rec.quantity, rec.n)].append(rec)
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    for (quantity, n), recs in sorted(groups.items()):
        eps = np.array([r.epsilon for r in recs])
        p = np.array([r.stats.estimate for r in recs])
        se = np.array([r.stats.stderr for r in recs])
        mask = p > 0
        ax.errorbar(eps[mask], p[mask], yerr=se[mask], marker="o", ls="none", ms=4,
                    label=f"{quantity}, n={n}", capsize=2)
        fit = result.fits.get(f"n={n}")
        if fit is not None:
            grid = np.geomspace(eps[mask].min(), eps[mask].max(), 50)
            ax.plot(grid, np.exp(fit.intercept) * grid**fit.slope, "--", lw=1,
                    label=f"n={n}: slope {fit.slope:.2f}")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("epsilon")
    ax.set_ylabel("probability")
    ax.set_title(result.name)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def _scalar_figure(result: ExperimentResult, path: Path) -> None:
    groups = defaultdict(list)
    for rec in result.records:
        if rec.epsilon is None:
            groups[rec.quantity].append(rec)
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    for quantity, recs in sorted(groups.items()):
        recs = sorted(recs, key=lambda r: r.n)
        ns = np.array([r.n for r in recs])
        est = np.array([r.stats.estimate for r in recs])
        se = np.array([r.stats.stderr for r in recs])
        ax.errorbar(ns, est, yerr=2 * se, marker="o", capsize=3, label=quantity)
        theory = [r.stats.theory_value for r in recs]
        if all(t is not None for t in theory):
            ax.plot(ns, theory, "k--", lw=1, label=f"{quantity} (theory)")
    ax.set_xlabel("n")
    ax.set_ylabel("value")
    ax.set_title(result.name)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def render_figures(result: ExperimentResult, out_dir) -> list[Path]:
    """Render the figures appropriate for this result; returns paths."""
    out = Path(out_dir)
    fig_dir = out / "figures"
    fig_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    has_tail = any(r.epsilon is not None for r in result.records)
    has_scalar = any(r.epsilon is None for r in result.records)
    if has_tail:
        p = fig_dir / f"{result.name}_tails.png"
        _tail_figure(result, p)
        paths.append(p)
    if has_scalar:
        p = fig_dir / f"{result.name}_summary.png"
        _scalar_figure(result, p)
        paths.append(p)
    return paths
