"""SVG rendering of BPDs and co-BPDs with per-pipe colours and highlighted bumps."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .diagram import EDGES, Diagram, Mode
from .trace import trace

__all__ = ["to_svg", "PALETTE"]

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)

_MID = {"N": (0.5, 0.0), "S": (0.5, 1.0), "E": (1.0, 0.5), "W": (0.0, 0.5)}


def _colour(label: int) -> str:
    return PALETTE[(label - 1) % len(PALETTE)]


def _seg(x0: float, y0: float, size: float, a: str, b: str, colour: str, width: float) -> str:
    (ax, ay), (bx, by) = _MID[a], _MID[b]
    p = lambda fx, fy: f"{x0 + fx * size:.1f},{y0 + fy * size:.1f}"
    if {a, b} in ({"N", "S"}, {"E", "W"}):
        return f'<path d="M{p(ax, ay)} L{p(bx, by)}" stroke="{colour}" stroke-width="{width}" fill="none"/>'
    return (
        f'<path d="M{p(ax, ay)} Q{p(0.5, 0.5)} {p(bx, by)}" stroke="{colour}" '
        f'stroke-width="{width}" fill="none" stroke-linecap="round"/>'
    )


def to_svg(d: Diagram, cell: int = 40, bump_tiles: bool = False, labels: bool = True) -> str:
    """
    Draw each tile as edge-midpoint segments coloured by pipe. Bump cells get
    a shaded background; with ``bump_tiles`` they are drawn as the pair of
    elbows the pipes actually follow instead of a crossing.
    """
    tr = trace(d)
    owner = tr.owner()
    n, pad = d.n, cell
    width = n * cell + 2 * pad
    stroke = max(2.0, cell / 10)
    cobpd = d.mode is Mode.COBPD
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{width}" '
        f'viewBox="0 0 {width} {width}">',
        f'<rect x="0" y="0" width="{width}" height="{width}" fill="white"/>',
    ]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            x0, y0 = pad + (j - 1) * cell, pad + (i - 1) * cell
            fill = "#ffd6d6" if (i, j) in tr.bumps else "none"
            out.append(
                f'<rect x="{x0}" y="{y0}" width="{cell}" height="{cell}" '
                f'fill="{fill}" stroke="#cccccc" stroke-width="1"/>'
            )
            t = d[i, j]
            if t == ".":
                continue
            if t == "+":
                m = tr.meetings[i, j]
                entry = "N" if cobpd else "S"
                exit_ = "S" if cobpd else "N"
                if m.bump and bump_tiles:
                    out.append(_seg(x0, y0, cell, entry, "E", _colour(m.through), stroke))
                    out.append(_seg(x0, y0, cell, "W", exit_, _colour(m.across), stroke))
                else:
                    out.append(_seg(x0, y0, cell, "N", "S", _colour(m.through), stroke))
                    out.append(_seg(x0, y0, cell, "W", "E", _colour(m.across), stroke))
                continue
            a, b = sorted(EDGES[t])
            out.append(_seg(x0, y0, cell, a, b, _colour(owner[i, j][0]), stroke))
    if labels:
        font = max(10, cell // 3)
        edge_y = pad - cell * 0.25 if cobpd else pad + n * cell + cell * 0.6
        for k in range(1, n + 1):
            cx = pad + (k - 0.5) * cell
            out.append(
                f'<text x="{cx:.1f}" y="{edge_y:.1f}" font-size="{font}" text-anchor="middle" '
                f'font-family="monospace">{k}</text>'
            )
            cy = pad + (k - 0.5) * cell + font / 3
            out.append(
                f'<text x="{pad + n * cell + cell * 0.3:.1f}" y="{cy:.1f}" font-size="{font}" '
                f'font-family="monospace">{escape(str(tr.perm[k]))}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
