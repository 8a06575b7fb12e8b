"""Hasse diagram figures rendered with matplotlib to image files."""

from __future__ import annotations

from collections.abc import Sequence
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .fca import ConceptLattice, reduced_labels  # noqa: E402


def _levels(n: int, edges: Sequence[tuple[int, int]]) -> list[int]:
    # level = length of the longest chain down to a minimal element
    below: list[list[int]] = [[] for _ in range(n)]
    for lo, hi in edges:
        below[hi].append(lo)
    level: list[int | None] = [None] * n

    def depth(v: int) -> int:
        if level[v] is None:
            level[v] = 1 + max((depth(u) for u in below[v]), default=-1)
        return level[v]

    return [depth(v) for v in range(n)]


def plot_hasse(
    labels: Sequence[str],
    edges: Sequence[tuple[int, int]],
    path: str | Path,
    title: str = "",
    highlight: Sequence[int] = (),
):
    """Draw a Hasse diagram given node labels and ``(lower, upper)`` cover pairs."""
    n = len(labels)
    level = _levels(n, edges)
    rows: dict[int, list[int]] = {}
    for v in range(n):
        rows.setdefault(level[v], []).append(v)
    pos = {}
    for lv, members in rows.items():
        for k, v in enumerate(members):
            pos[v] = ((k + 1) / (len(members) + 1), lv)
    height = max(rows, default=0) + 1
    fig, ax = plt.subplots(figsize=(max(6, 1.6 * max(len(m) for m in rows.values())), 1.4 * height + 1))
    for lo, hi in edges:
        (x0, y0), (x1, y1) = pos[lo], pos[hi]
        hot = lo in highlight and hi in highlight
        ax.plot([x0, x1], [y0, y1], color="crimson" if hot else "0.55",
                lw=2.0 if hot else 0.9, zorder=1)
    for v, (x, y) in pos.items():
        ax.text(
            x, y, labels[v], ha="center", va="center", fontsize=8, zorder=2,
            bbox=dict(boxstyle="round,pad=0.3",
                      fc="mistyrose" if v in highlight else "white",
                      ec="crimson" if v in highlight else "0.3"),
        )
    ax.set_xlim(0, 1)
    ax.set_ylim(-0.6, height - 0.4)
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=11)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_concept_lattice(lattice: ConceptLattice, path: str | Path, title: str = "Concept lattice"):
    labels = []
    for attrs, objs in reduced_labels(lattice):
        parts = [p for p in (", ".join(attrs), ", ".join(objs)) if p]
        labels.append("\n".join(parts) if parts else "·")
    return plot_hasse(labels, lattice.hasse_edges, path, title)
