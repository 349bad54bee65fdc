"""PNG figures written next to the delimited reports."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .counterpoint import SequenceAnalysis, TheoremReport  # noqa: E402
from .report import AnalysisReport  # noqa: E402

_STYLE = {
    "font.size": 9,
    "axes.titlesize": 10,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
}


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_parsimony(analysis: SequenceAnalysis, path: str | Path, title: str = "") -> Path:
    """Bar chart of symmetry-set cardinality per transition."""
    labels = [f"{t.source}\n→{t.target}" for t in analysis.transitions]
    cards = analysis.cardinalities
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(max(4.0, 0.7 * len(cards) + 1), 3))
        ax.bar(range(len(cards)), cards, color="0.35", width=0.6)
        ax.set_xticks(range(len(cards)))
        ax.set_xticklabels(labels, fontsize=7)
        ax.set_ylabel("symmetries")
        ax.set_yticks(range(0, max(cards, default=0) + 2))
        if title:
            ax.set_title(title)
        return _save(fig, Path(path))


def plot_successor_counts(report: TheoremReport, path: str | Path) -> Path:
    """Heat map of successor counts, cantus by consonance, with the bound marked in the title."""
    table = report.per_cantus()
    cantus = sorted(table)
    intervals = sorted(next(iter(table.values())))
    grid = [[table[x][y] for y in intervals] for x in cantus]
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(4, 5))
        im = ax.imshow(grid, cmap="Greys", vmin=0, vmax=72, aspect="auto")
        ax.set_xticks(range(len(intervals)))
        ax.set_xticklabels(intervals)
        ax.set_yticks(range(len(cantus)))
        ax.set_yticklabels(cantus)
        ax.set_xlabel("interval")
        ax.set_ylabel("cantus")
        for i, row in enumerate(grid):
            for j, n in enumerate(row):
                ax.text(j, i, n, ha="center", va="center", fontsize=7, color="white" if n > 40 else "black")
        ax.set_title(f"admissible successors (min {report.minimum}, bound {report.bound})")
        fig.colorbar(im, ax=ax, shrink=0.7)
        return _save(fig, Path(path))


def plot_fixture_summary(report: AnalysisReport, path: str | Path) -> Path:
    per = report.metadata["fixtures"]
    names = list(per)
    ok = [per[n]["checks"] - per[n]["mismatches"] for n in names]
    bad = [per[n]["mismatches"] for n in names]
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(5, 0.3 * len(names) + 1))
        ax.barh(names, ok, color="0.4", label="match")
        ax.barh(names, bad, left=ok, color="tab:red", label="mismatch")
        ax.invert_yaxis()
        ax.set_xlabel("checks")
        ax.legend(loc="lower right", frameon=False)
        return _save(fig, Path(path))


def write_sequence_figures(analyses: Sequence[tuple[str, SequenceAnalysis]], directory: str | Path) -> list[Path]:
    out = Path(directory)
    return [plot_parsimony(a, out / f"{name}_parsimony.png", title=name) for name, a in analyses]
