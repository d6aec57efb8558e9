"""PNG figures for solutions and relation tables (matplotlib, Agg backend)."""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Rectangle  # noqa: E402

from .fileformat import region_letter
from .grid import IntRect, PixelRegion
from .relations import ConverseTable


def render_solution(
    regions: Sequence[PixelRegion],
    path: Union[str, Path],
    mbrs: Optional[Sequence[IntRect]] = None,
    title: str = "",
) -> Path:
    """Draw each region's pixels translucently with its bounding rectangle outlined."""
    path = Path(path)
    frame = regions[0].frame
    cmap = plt.get_cmap("tab10")
    size = max(4.0, min(10.0, 0.4 * max(frame.n_x, frame.n_y)))
    fig, ax = plt.subplots(figsize=(size, size))
    for i, region in enumerate(regions):
        color = cmap(i % 10)
        for k, l in region.pixels():
            ax.add_patch(Rectangle((k, l), 1, 1, facecolor=color, alpha=0.45, linewidth=0))
        box = mbrs[i] if mbrs is not None else None
        if box is not None:
            ax.add_patch(
                Rectangle(
                    (box.x_lo, box.y_lo),
                    box.x_hi - box.x_lo,
                    box.y_hi - box.y_lo,
                    fill=False,
                    edgecolor=color,
                    linewidth=2,
                    label=region_letter(i),
                )
            )
    ax.set_xlim(0, frame.n_x)
    ax.set_ylim(0, frame.n_y)
    ax.set_aspect("equal")
    if max(frame.n_x, frame.n_y) <= 30:
        ax.set_xticks(range(frame.n_x + 1))
        ax.set_yticks(range(frame.n_y + 1))
        ax.grid(True, linewidth=0.3, color="0.7")
    if mbrs is not None:
        ax.legend(loc="upper left", bbox_to_anchor=(1.01, 1.0), frameon=False)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path


def render_converse_histogram(table: ConverseTable, path: Union[str, Path]) -> Path:
    """Bar chart: how many relations have each number of converses."""
    path = Path(path)
    dist = table.size_distribution()
    fig, ax = plt.subplots(figsize=(6, 4))
    labels = [str(k) for k in dist]
    bars = ax.bar(labels, list(dist.values()), color="tab:blue")
    ax.bar_label(bars)
    ax.set_xlabel("number of converses")
    ax.set_ylabel("number of basic relations")
    ax.set_title(f"{table.model.value}: {table.pair_count} consistent ordered pairs")
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path
