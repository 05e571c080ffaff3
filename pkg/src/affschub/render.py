"""
Crossing-out diagrams as text or as matplotlib figures (SVG/PNG), and the
summary figure written next to a crosscheck log.
"""

from __future__ import annotations

import io
from pathlib import Path

from matplotlib.figure import Figure
from matplotlib.patches import Rectangle

from .affine_perm import AffinePermutation
from .diagram import CrossoutStatus, crossout_status, is_essential

__all__ = ["default_window", "ascii_diagram", "diagram_figure", "save_figure", "crosscheck_figure"]

_GLYPH = {
    CrossoutStatus.UNCROSSED: ".",
    CrossoutStatus.VERTICAL_ONLY: "|",
    CrossoutStatus.HORIZONTAL_ONLY: "-",
    CrossoutStatus.BOTH: "+",
    CrossoutStatus.ONE_CELL: "1",
}


def default_window(w: AffinePermutation) -> range:
    """The 3n consecutive indices 1 - n, ..., 2n."""
    return range(1 - w.n, 2 * w.n + 1)


def ascii_diagram(w: AffinePermutation, rows: range | None = None, cols: range | None = None) -> str:
    """
    One character per cell: 1 for the permutation, | - + for cells crossed
    vertically, horizontally or both, '.' for the diagram and E for its
    essential boxes.
    """
    rows = rows or default_window(w)
    cols = cols or default_window(w)
    width = max(len(str(x)) for x in list(rows) + list(cols))
    out = [" " * (width + 1) + " ".join(str(j).rjust(width) for j in cols)]
    for i in rows:
        cells = []
        for j in cols:
            glyph = "E" if is_essential(w, i, j) else _GLYPH[crossout_status(w, i, j)]
            cells.append(glyph.rjust(width))
        out.append(str(i).rjust(width) + " " + " ".join(cells))
    return "\n".join(out)


def diagram_figure(w: AffinePermutation, rows: range | None = None, cols: range | None = None) -> Figure:
    rows = rows or default_window(w)
    cols = cols or default_window(w)
    r0, r1, c0, c1 = rows.start, rows.stop - 1, cols.start, cols.stop - 1
    fig = Figure(figsize=(0.35 * len(cols) + 1.2, 0.35 * len(rows) + 1.2))
    ax = fig.add_subplot()
    for i in rows:
        for j in cols:
            if is_essential(w, i, j):
                ax.add_patch(Rectangle((j - 0.5, i - 0.5), 1, 1, color="tab:orange", alpha=0.6, lw=0))
    for i in rows:
        j = w.inv(i)
        if j <= c1:
            ax.plot([max(j, c0 - 0.5), c1 + 0.5], [i, i], color="0.45", lw=1.2)
    for j in cols:
        i = w(j)
        if i <= r1:
            ax.plot([j, j], [max(i, r0 - 0.5), r1 + 0.5], color="0.45", lw=1.2)
            if i >= r0:
                ax.plot([j], [i], "o", color="black", ms=5)
    ax.set_xlim(c0 - 0.5, c1 + 0.5)
    ax.set_ylim(r1 + 0.5, r0 - 0.5)
    ax.set_xticks(list(cols))
    ax.set_yticks(list(rows))
    ax.set_xticks([c - 0.5 for c in range(c0, c1 + 2)], minor=True)
    ax.set_yticks([r - 0.5 for r in range(r0, r1 + 2)], minor=True)
    ax.grid(which="minor", color="0.85", lw=0.5)
    ax.tick_params(which="both", length=0, labelsize=7)
    ax.xaxis.tick_top()
    ax.set_aspect("equal")
    ax.set_title(f"w = {w}", fontsize=9)
    fig.tight_layout()
    return fig


def save_figure(fig: Figure, path: str | Path | None, fmt: str) -> bytes | None:
    """Write to ``path``; with no path return the encoded bytes instead."""
    if path is not None:
        fig.savefig(path, format=fmt)
        return None
    buf = io.BytesIO()
    fig.savefig(buf, format=fmt)
    return buf.getvalue()


def crosscheck_figure(records: list[dict]) -> Figure:
    """Finitary best value against the lattice dimension at every checked box."""
    xs, ys = [], []
    for rec in records:
        for box in rec["boxes"]:
            xs.append(box["oracle_d"])
            ys.append(box["finitary_best"])
    fig = Figure(figsize=(4.2, 4.0))
    ax = fig.add_subplot()
    if xs:
        top = max(xs + ys) + 1
        ax.plot([0, top], [0, top], color="0.6", lw=1, ls="--")
        ax.scatter(xs, ys, s=14, alpha=0.5)
    ax.set_xlabel("lattice dimension d(i, j)")
    ax.set_ylabel("finitary best  max_l (l - rank)")
    ax.set_title(f"{len(records)} records, {len(xs)} essential boxes", fontsize=9)
    fig.tight_layout()
    return fig
