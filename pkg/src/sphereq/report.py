"""File-backed reporting: TSV tables and matplotlib figures.

matplotlib is imported lazily with the Agg backend, so library use and the
non-reporting CLI paths never pay for it and everything works headless.
"""

from __future__ import annotations

import os
from dataclasses import dataclass


@dataclass(frozen=True)
class BenchRow:
    instance: str
    strategy: str
    verdict: str
    millis: float


BENCH_HEADER = ("instance", "strategy", "verdict", "millis")


def bench_rows_to_tsv(rows: list[BenchRow]) -> str:
    lines = ["\t".join(BENCH_HEADER)]
    for r in rows:
        lines.append(f"{r.instance}\t{r.strategy}\t{r.verdict}\t{r.millis:.3f}")
    return "\n".join(lines) + "\n"


def write_bench_report(rows: list[BenchRow], out_dir: str) -> tuple[str, str]:
    """Write bench.tsv and bench.png into out_dir; returns both paths."""
    os.makedirs(out_dir, exist_ok=True)
    tsv_path = os.path.join(out_dir, "bench.tsv")
    png_path = os.path.join(out_dir, "bench.png")
    with open(tsv_path, "w") as fh:
        fh.write(bench_rows_to_tsv(rows))
    render_bench_figure(rows, png_path)
    return tsv_path, png_path


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_bench_figure(rows: list[BenchRow], path: str) -> None:
    """Horizontal bar chart of per-instance timings, grouped by strategy."""
    plt = _pyplot()
    instances = sorted({r.instance for r in rows})
    strategies = sorted({r.strategy for r in rows})
    height = 0.8 / max(len(strategies), 1)
    fig, ax = plt.subplots(figsize=(8, max(2.0, 0.5 * len(instances) + 1)))
    for si, strat in enumerate(strategies):
        ys, xs = [], []
        for ii, name in enumerate(instances):
            for r in rows:
                if r.instance == name and r.strategy == strat:
                    ys.append(ii + si * height)
                    xs.append(max(r.millis, 1e-3))
        ax.barh(ys, xs, height=height, label=strat)
    ax.set_yticks([i + 0.4 - height / 2 for i in range(len(instances))])
    ax.set_yticklabels(instances)
    ax.set_xlabel("milliseconds")
    ax.set_xscale("log")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_placement_figure(sides, placement, path: str) -> None:
    """Draw the packed box with one colored square per piece."""
    plt = _pyplot()
    from matplotlib import patches

    n0 = placement.box
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.add_patch(
        patches.Rectangle((0, 0), n0, n0, fill=False, edgecolor="black", linewidth=2)
    )
    cmap = plt.get_cmap("tab20")
    for i, ((x, y), s) in enumerate(zip(placement.offsets, sides)):
        ax.add_patch(
            patches.Rectangle(
                (x, y), s, s, facecolor=cmap(i % 20), edgecolor="black", alpha=0.8
            )
        )
        ax.text(x + s / 2, y + s / 2, str(i + 1), ha="center", va="center")
    ax.set_xlim(-0.5, n0 + 0.5)
    ax.set_ylim(-0.5, n0 + 0.5)
    ax.set_aspect("equal")
    ax.set_xticks(range(n0 + 1))
    ax.set_yticks(range(n0 + 1))
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
