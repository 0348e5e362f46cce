"""Figure rendering for the report subcommand.

Pure file output: the Agg backend is forced before pyplot is touched,
so this module never needs a display.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .gauss import OVER, UNDER
from .periodic import PeriodicGaussCode

_COLORS = plt.rcParams["axes.prop_cycle"].by_key()["color"]


def chord_diagram(pcode: PeriodicGaussCode, path: str) -> None:
    """Chord diagram of the periodic code.

    Pass positions sit on a circle in traversal order; each crossing is
    a chord from its over pass to its under pass, colored by the orbit
    class i of the rotation (so the p-fold symmetry is visible as color
    repetition) and dashed when the crossing sign is negative.  Radial
    ticks mark the fundamental-domain boundaries.
    """
    seq = pcode.code.traversal()
    total = len(seq)
    angle = {
        t: math.pi / 2 - 2 * math.pi * t / total for t in range(total)
    }
    pos = {
        t: (math.cos(angle[t]), math.sin(angle[t])) for t in range(total)
    }
    fig, ax = plt.subplots(figsize=(6, 6))
    circle = plt.Circle((0, 0), 1.0, fill=False, color="0.75", lw=1.0)
    ax.add_patch(circle)
    for j in range(pcode.p):
        t = (2 * pcode.n * j) % total
        # domain boundary sits between position t-1 and t
        theta = angle[t] + math.pi / total
        ax.plot(
            [0.92 * math.cos(theta), 1.08 * math.cos(theta)],
            [0.92 * math.sin(theta), 1.08 * math.sin(theta)],
            color="0.6",
            lw=1.0,
        )
    over_at = {ps.crossing: t for t, ps in enumerate(seq) if ps.strand == OVER}
    under_at = {ps.crossing: t for t, ps in enumerate(seq) if ps.strand == UNDER}
    seen_classes = set()
    for c, (i, _j) in sorted(pcode.labels.items()):
        color = _COLORS[(i - 1) % len(_COLORS)]
        style = "-" if pcode.signs[i] > 0 else "--"
        label = None
        if i not in seen_classes:
            seen_classes.add(i)
            label = f"class {i} ({'+' if pcode.signs[i] > 0 else '-'})"
        (x0, y0), (x1, y1) = pos[over_at[c]], pos[under_at[c]]
        ax.plot([x0, x1], [y0, y1], style, color=color, lw=1.6, label=label)
        ax.plot([x0], [y0], "o", ms=5, color=color)
        ax.plot([x1], [y1], "o", ms=5, mfc="white", color=color)
    ax.legend(loc="upper right", fontsize=8, framealpha=0.9)
    ax.set_title(
        f"p = {pcode.p}, n = {pcode.n}: chords over (filled) to under (open)"
    )
    ax.set_aspect("equal")
    ax.set_xlim(-1.25, 1.25)
    ax.set_ylim(-1.25, 1.25)
    ax.axis("off")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def orbit_chart(orbit_sizes: dict[int, dict[int, int]], path: str) -> None:
    """Bar chart of hom-action orbit sizes, one color per oracle degree."""
    fig, ax = plt.subplots(figsize=(6, 4))
    if not orbit_sizes:
        ax.text(0.5, 0.5, "no orbit data", ha="center", va="center")
        ax.axis("off")
    else:
        labels = []
        heights = []
        colors = []
        for di, d in enumerate(sorted(orbit_sizes)):
            for size in sorted(orbit_sizes[d]):
                labels.append(f"d={d}\nsize {size}")
                heights.append(orbit_sizes[d][size])
                colors.append(_COLORS[di % len(_COLORS)])
        xs = range(len(labels))
        ax.bar(xs, heights, color=colors)
        ax.set_xticks(list(xs), labels, fontsize=8)
        ax.set_ylabel("number of orbits")
        for x, h in zip(xs, heights):
            ax.text(x, h, str(h), ha="center", va="bottom", fontsize=8)
        ax.set_title("orbits of the induced map acting on finite quotients")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
