"""SVG drawing of 2D representations: dots for vertices, squares for obstacles."""

from __future__ import annotations

from typing import Optional
from xml.sax.saxutils import escape

from .grid import BLOCKED, Graph, GridObsError, Representation
from .visibility import witness_path

CELL = 20
PAD = 2
MAX_CELLS = 250_000


def viewport(rep: Representation) -> tuple[tuple[int, int], tuple[int, int]]:
    """Bounds for blocked representations; padded bounding box otherwise."""
    if rep.default == BLOCKED:
        return rep.bounds
    pts = list(rep.vertices) + list(rep.cells)
    if not pts:
        return (-PAD, -PAD), (PAD, PAD)
    lo = (min(p[0] for p in pts) - PAD, min(p[1] for p in pts) - PAD)
    hi = (max(p[0] for p in pts) + PAD, max(p[1] for p in pts) + PAD)
    return lo, hi


def render_svg(rep: Representation, g: Optional[Graph] = None) -> str:
    if rep.dim != 2:
        raise GridObsError("only 2D representations can be rendered")
    (x0, y0), (x1, y1) = viewport(rep)
    w, h = x1 - x0 + 1, y1 - y0 + 1
    if w * h > MAX_CELLS:
        raise GridObsError(f"viewport of {w}x{h} cells is too large to render")

    def sx(x):
        return (x - x0) * CELL

    def sy(y):
        # y grows upwards on the lattice, downwards in SVG
        return (y1 - y) * CELL

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w * CELL}" height="{h * CELL}" '
        f'viewBox="0 0 {w * CELL} {h * CELL}">',
        f'<rect class="background" x="0" y="0" width="{w * CELL}" height="{h * CELL}" fill="white"/>',
    ]
    if rep.default == BLOCKED:
        out.append('<g class="free" fill="#e8eef8" stroke="none">')
        for x, y in sorted(rep.cells):
            out.append(f'<rect class="free" x="{sx(x)}" y="{sy(y)}" width="{CELL}" height="{CELL}"/>')
        out.append("</g>")
        out.append('<g class="obstacles" fill="#333333" stroke="none">')
        obstacles = rep.obstacles()
    else:
        out.append('<g class="obstacles" fill="#333333" stroke="none">')
        obstacles = iter(sorted(rep.cells))
    for x, y in obstacles:
        m = CELL // 5
        out.append(f'<rect class="obstacle" x="{sx(x) + m}" y="{sy(y) + m}" width="{CELL - 2 * m}" height="{CELL - 2 * m}"/>')
    out.append("</g>")
    if g is not None:
        out.append('<g class="paths" fill="none" stroke="#c0392b" stroke-width="2">')
        for u, v in g.sorted_edges():
            path = witness_path(rep, u, v)
            if path is None:
                continue
            pts = " ".join(f"{sx(x) + CELL // 2},{sy(y) + CELL // 2}" for x, y in path)
            out.append(f'<polyline class="witness" data-edge="{u}-{v}" points="{pts}"/>')
        out.append("</g>")
    out.append('<g class="vertices" fill="#1f4e9c" stroke="none">')
    for i, (x, y) in enumerate(rep.vertices):
        out.append(
            f'<circle class="vertex" cx="{sx(x) + CELL // 2}" cy="{sy(y) + CELL // 2}" r="{CELL * 0.35:g}">'
            f"<title>{escape(str(i))}</title></circle>"
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
