"""Obstacle representations in Z^3 for graphs of bounded chromatic number.

Colour class i sits on the line {(i, t, i*t)}; the drawing is then refined,
digitized and boxed exactly as in the plane, with cubes in place of squares.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .construction import ConstructionGeometry, delta_v2, digitize_edge, place_obstacles, reroute_in_boxes
from .geometry import drawing_is_planar, sqrt_below
from .grid import ConstructionError, Graph, GridObsError, Representation
from .planar import ADAPTIVE, PAPER_FAITHFUL, REFINE_CONSTANT, MAX_SCALE_EXP, _geometry, _normalize_mode, adaptive_geometry
from .construction import min_clearance2

RETRY_BUDGET = 200


@dataclass(frozen=True)
class Drawing3D:
    positions: tuple[tuple[int, int, int], ...]
    edges: tuple[tuple[int, int], ...]
    color_classes: tuple[tuple[int, ...], ...]

    @property
    def r(self) -> int:
        return len(self.color_classes)

    def is_crossing_free(self) -> bool:
        return drawing_is_planar(dict(enumerate(self.positions)), self.edges)

    def extent(self) -> tuple[int, int, int]:
        return tuple(max(p[k] for p in self.positions) - min(p[k] for p in self.positions) + 1 for k in range(3))


def color_classes(g: Graph) -> list[list[int]]:
    """Greedy proper colouring in label order."""
    color: dict[int, int] = {}
    for v in range(g.n):
        used = {color[w] for w in g.adjacency[v] if w in color}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    classes: list[list[int]] = [[] for _ in range(max(color.values(), default=-1) + 1)]
    for v in range(g.n):
        classes[color[v]].append(v)
    return classes


def straight_line_embed_3d(g: Graph, classes=None) -> Drawing3D:
    """Place class i on the line (i, t, i*t) with distinct parameters t.

    The first attempt uses t = 0, 1, 2, ... in label order.  Further attempts
    shuffle the parameters with a fixed seed until the drawing is crossing-free.
    """
    if classes is None:
        classes = color_classes(g)
    cls = {}
    for i, members in enumerate(classes):
        for v in members:
            cls[v] = i
    if sorted(cls) != list(range(g.n)):
        raise GridObsError("colour classes must partition the vertices")
    for u, v in g.edges:
        if cls[u] == cls[v]:
            raise GridObsError(f"edge ({u}, {v}) joins two vertices of class {cls[u]}")
    params = list(range(g.n))
    rng = random.Random(0)
    for _ in range(RETRY_BUDGET):
        pos = tuple((cls[v], params[v], cls[v] * params[v]) for v in range(g.n))
        d = Drawing3D(pos, tuple(g.sorted_edges()), tuple(tuple(c) for c in classes))
        if d.is_crossing_free():
            return d
        rng.shuffle(params)
    raise ConstructionError(f"no crossing-free parameter assignment within {RETRY_BUDGET} attempts")


def _faithful_geometry_3d(d: Drawing3D) -> ConstructionGeometry:
    """Blow up until the clearance exceeds the refinement constant, unit cubes,
    tube radius just under min delta(v)/10, lattice spacing at most delta/100."""
    c2 = min_clearance2(d.positions, d.edges)
    blow = 1
    while blow * blow * c2 < REFINE_CONSTANT**2:
        blow += 1
    scaled = [tuple(blow * x for x in p) for p in d.positions]
    half_draw = Fraction(1, 2)
    nbrs = [[] for _ in scaled]
    for a, b in d.edges:
        nbrs[a].append(scaled[b])
        nbrs[b].append(scaled[a])
    gaps = [x for v, c in enumerate(scaled) if (x := delta_v2(c, nbrs[v], half_draw)) is not None]
    delta = sqrt_below(min(gaps) / 100) if gaps else half_draw / 10
    m = 2 * ceil(50 / delta)
    centers = [tuple(m * x for x in p) for p in scaled]
    extra = {"refine_constant": REFINE_CONSTANT, "blow_up": blow, "lattice_factor": m, "delta_drawing": delta}
    return _geometry(PAPER_FAITHFUL, blow, Fraction(1, m), centers, d.edges, m // 2, delta * m, extra)


def faithful_dimensions(g: Graph) -> dict:
    """Faithful-mode cube and grid dimensions without materializing the grid."""
    d = straight_line_embed_3d(g)
    geo = _faithful_geometry_3d(d)
    dims = []
    for k in range(3):
        vals = [c[k] for c in geo.centers]
        dims.append(max(vals) - min(vals) + 2 * geo.half + 3)
    n, r = g.n, d.r
    targets = (r**4 * n**3, r**3 * n**4, r**4 * n**4)
    return {
        "n": n,
        "r": r,
        "dims": dims,
        "targets": targets,
        "ratios": [Fraction(x, t) for x, t in zip(dims, targets)],
        "checks": geo.checks,
        "geometry": geo,
    }


def embed3d(g: Graph, mode: str = ADAPTIVE, workers: int = 1) -> tuple[Representation, ConstructionGeometry]:
    from .visibility import verify

    mode = _normalize_mode(mode)
    if g.n < 2:
        raise GridObsError("embed3d needs at least two vertices")
    d = straight_line_embed_3d(g)
    min_scale = 1
    for _ in range(MAX_SCALE_EXP):
        if mode == ADAPTIVE:
            geo = adaptive_geometry(d.positions, d.edges, min_scale)
        else:
            geo = _faithful_geometry_3d(d)
            if not geo.checks_pass():
                raise ConstructionError(f"faithful geometry fails its disjointness checks: {geo.checks}")
        raw = {e: digitize_edge((geo.centers[e[0]], geo.centers[e[1]])) for e in geo.edges}
        paths = reroute_in_boxes(raw, geo)
        geo.paths.update(paths)
        rep = place_obstacles(geo, paths)
        if verify(rep, g, workers=workers).matches:
            return rep, geo
        if mode == PAPER_FAITHFUL:
            raise ConstructionError("faithful 3D construction does not verify")
        min_scale = int(geo.scale) * 2
    raise ConstructionError("adaptive refinement did not converge")
