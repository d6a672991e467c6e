"""Plot emission for experiment reports: improvement bars and matrix heatmaps."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = ["emit_plots"]


def _improvement_chart(reports, algorithm: str, path: Path) -> None:
    cells = [r for r in reports if r.algorithm == algorithm and r.error is None]
    labels = [f"{r.kind}\n{r.term_set}" for r in cells]
    values = [0.0 if r.improvement is None else r.improvement for r in cells]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.9 * len(cells) + 1.5), 4.0))
    ax.bar(range(len(cells)), values, color="steelblue")
    ax.set_xticks(range(len(cells)))
    ax.set_xticklabels(labels, fontsize=7, rotation=45, ha="right")
    ax.set_ylim(min(0.0, *values, 0.0) - 0.05, 1.05)
    ax.set_ylabel("mean improvement over random")
    ax.set_title(f"algorithm: {algorithm}")
    ax.axhline(0.0, color="black", linewidth=0.6)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def _heatmap(adjacency, title: str, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(4.0, 4.0))
    ax.imshow(adjacency, cmap="Greys", interpolation="nearest", vmin=0, vmax=1)
    ax.set_title(title, fontsize=8)
    ax.set_xticks([])
    ax.set_yticks([])
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def emit_plots(reports, out_dir) -> list[Path]:
    """Write one improvement bar chart per algorithm and one adjacency
    heatmap per cell (first replicate), as SVG files.  Returns the paths."""
    reports = list(reports)
    if not reports:
        print("emit_plots: no cell reports, nothing to plot")
        return []
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for algorithm in dict.fromkeys(r.algorithm for r in reports):
        path = out_dir / f"improvement_{algorithm}.svg"
        _improvement_chart(reports, algorithm, path)
        written.append(path)
    for r in reports:
        if r.sample_adjacency is None:
            continue
        path = out_dir / f"heatmap_{r.kind}__{r.term_set}__{r.algorithm}.svg"
        _heatmap(r.sample_adjacency, f"{r.kind} / {r.term_set} / {r.algorithm}", path)
        written.append(path)
    return written
