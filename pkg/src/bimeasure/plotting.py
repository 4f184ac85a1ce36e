"""Heatmaps of multiplication tables, written to files (Agg backend, no display)."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

plt.rcParams.update({"font.size": 9, "svg.hashsalt": "bimeasure", "pdf.fonttype": 42})


def product_table(A) -> tuple[list[list[int]], str]:
    """Cayley-style grid for a multiplication table.

    When every basis product is a single basis vector with coefficient 1 the
    cell holds that vector's index; otherwise it holds the number of nonzero
    structure constants in e_i e_j.
    """
    d = A.dim
    grid = [[0] * d for _ in range(d)]
    cayley = True
    for i in range(d):
        for j in range(d):
            terms = A.mult.pair(i, j)
            grid[i][j] = len(terms)
            if len(terms) != 1 or terms[0][1] != A.field.one:
                cayley = False
    if cayley:
        grid = [[A.mult.pair(i, j)[0][0] for j in range(d)] for i in range(d)]
        return grid, "index of e_i e_j"
    return grid, "nonzero terms in e_i e_j"


def heatmap(grid, labels, title: str, path: str, annotate: bool = True) -> str:
    n = len(grid)
    fig, ax = plt.subplots(figsize=(1.2 + 0.45 * n, 1.0 + 0.45 * n))
    img = ax.imshow(grid, cmap="viridis", interpolation="nearest")
    ax.set_xticks(range(n))
    ax.set_xticklabels(labels, rotation=60, fontsize=7)
    ax.set_yticks(range(n))
    ax.set_yticklabels(labels, fontsize=7)
    ax.set_title(title)
    if annotate and n <= 24:
        for i, row in enumerate(grid):
            for j, v in enumerate(row):
                ax.text(j, i, str(v), ha="center", va="center", fontsize=6, color="w")
    fig.colorbar(img, ax=ax, shrink=0.8)
    fig.tight_layout()
    fig.savefig(path, metadata={"Date": None} if path.endswith(".svg") else None)
    plt.close(fig)
    return path


def carrier_figure(A, name: str, out_dir: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    grid, what = product_table(A)
    return heatmap(grid, list(A.names), f"{name}: {what}", os.path.join(out_dir, f"{name}_mult.png"))


def group_figure(table, labels, name: str, out_dir: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    return heatmap(table, labels, f"{name}: group law", os.path.join(out_dir, f"{name}_group.png"))
