"""Obstacle representations of planar graphs in the plane.

Pipeline: a straight-line drawing on the (n-2)x(n-2) grid, uniform refinement
until boxes and tubes separate, a staircase per edge, rerouting inside the
boxes, and obstacles on every other lattice point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, isqrt
from typing import Optional

import networkx as nx
import numpy as np
from networkx.algorithms.planar_drawing import get_canonical_ordering, triangulate_embedding

from .construction import (
    AuditResult,
    ConstructionGeometry,
    delta_v2,
    digitize_edge,
    gbg_audit,
    min_clearance2,
    observation_checks,
    place_obstacles,
    reroute_in_boxes,
)
from .geometry import drawing_is_planar, sqrt_below
from .grid import ConstructionError, Graph, GridObsError, Representation

ADAPTIVE = "adaptive"
PAPER_FAITHFUL = "paper_faithful"
MODES = (ADAPTIVE, PAPER_FAITHFUL)

# Refinement constant of the faithful mode: the drawing is blown up by C*n.
REFINE_CONSTANT = 4
# Adaptive mode: tube radius in lattice steps, and the largest scale tried.
ADAPTIVE_DELTA = 2
MAX_SCALE_EXP = 24


@dataclass(frozen=True)
class PlanarDrawing:
    positions: tuple[tuple, ...]
    edges: tuple[tuple[int, int], ...]
    scale: Fraction = Fraction(1)

    @property
    def n(self) -> int:
        return len(self.positions)

    def segment(self, e: tuple[int, int]):
        return self.positions[e[0]], self.positions[e[1]]

    def is_planar(self) -> bool:
        return drawing_is_planar(dict(enumerate(self.positions)), self.edges)

    def scaled(self, factor) -> "PlanarDrawing":
        f = Fraction(factor)
        pos = tuple(tuple(_canon(x * f) for x in p) for p in self.positions)
        return PlanarDrawing(pos, self.edges, self.scale * f)


def _canon(x: Fraction):
    return int(x) if x.denominator == 1 else x


def _normalize_mode(mode: str) -> str:
    m = mode.replace("-", "_")
    if m not in MODES:
        raise GridObsError(f"unknown mode {mode!r}; expected adaptive or paper-faithful")
    return m


# ---------------------------------------------------------------------------
# Straight-line grid drawing (Schnyder woods on a triangulation)
# ---------------------------------------------------------------------------


def _realizer(order):
    """Three parent maps of a Schnyder wood read off a canonical ordering."""
    n = len(order)
    roots = (order[0][0], order[1][0], order[-1][0])
    parents = ({}, {}, {})
    for k in range(2, n):
        vk, contour = order[k]
        if k < n - 1:
            parents[0][vk] = contour[0]
            parents[1][vk] = contour[-1]
        for w in contour[1:-1]:
            parents[2][w] = vk
    return roots, parents


def _tutte(t: nx.Graph, outer) -> dict:
    nodes = list(t)
    idx = {v: i for i, v in enumerate(nodes)}
    a = np.zeros((len(nodes), len(nodes)))
    rhs = np.zeros((len(nodes), 2))
    fixed = dict(zip(outer, [(0.0, 0.0), (1.0, 0.0), (0.5, 1.0)]))
    for v in nodes:
        i = idx[v]
        if v in fixed:
            a[i, i] = 1.0
            rhs[i] = fixed[v]
            continue
        a[i, i] = t.degree(v)
        for w in t[v]:
            a[i, idx[w]] -= 1.0
    sol = np.linalg.solve(a, rhs)
    return {v: sol[idx[v]] for v in nodes}


def _inside(pt, poly) -> bool:
    x, y = pt
    hit = False
    for i in range(len(poly)):
        x1, y1 = poly[i]
        x2, y2 = poly[i - 1]
        if (y1 > y) != (y2 > y) and x1 + (y - y1) * (x2 - x1) / (y2 - y1) > x:
            hit = not hit
    return hit


def straight_line_embed(g: Graph) -> PlanarDrawing:
    """Integer straight-line drawing of a planar graph inside [0, n-2]^2."""
    n = g.n
    if n < 3:
        raise GridObsError("straight-line grid drawing needs n >= 3")
    ok, emb = nx.check_planarity(g.to_networkx())
    if not ok:
        raise GridObsError("graph is not planar")
    emb, outer = triangulate_embedding(emb, True)
    order = get_canonical_ordering(emb, outer)
    tri = nx.Graph(emb)
    roots, parents = _realizer(order)

    if n == 3:
        pos = {roots[0]: (1, 1), roots[1]: (0, 1), roots[2]: (1, 0)}
    else:
        layout = _tutte(tri, roots)

        def to_root(v, i):
            p = [v]
            while p[-1] != roots[i]:
                p.append(parents[i][p[-1]])
            return p

        pos = {roots[0]: (n - 2, 1), roots[1]: (0, n - 2), roots[2]: (1, 0)}
        for v in tri:
            if v in roots:
                continue
            paths = [to_root(v, i) for i in range(3)]
            counts = []
            for i in range(3):
                left, right = paths[(i - 1) % 3], paths[(i + 1) % 3]
                rim = set(left) | set(right)
                poly = [layout[w] for w in left] + [layout[w] for w in reversed(right)][:-1]
                counts.append(len(rim) + sum(1 for w in tri if w not in rim and _inside(layout[w], poly)))
            lengths = [len(p) for p in paths]
            pos[v] = (counts[0] - lengths[2], counts[1] - lengths[0])

    drawing = PlanarDrawing(tuple(pos[v] for v in range(n)), tuple(g.sorted_edges()))
    if len(set(drawing.positions)) != n or not drawing.is_planar():
        raise ConstructionError("grid drawing failed its planarity re-check")
    if not all(0 <= x <= n - 2 for p in drawing.positions for x in p):
        raise ConstructionError("grid drawing left the (n-2)x(n-2) square")
    return drawing


# ---------------------------------------------------------------------------
# Separation geometry
# ---------------------------------------------------------------------------


def _geometry(mode, scale, grid_step, centers, edges, half, delta, extra) -> ConstructionGeometry:
    nbrs = [[] for _ in centers]
    for a, b in edges:
        nbrs[a].append(centers[b])
        nbrs[b].append(centers[a])
    dv = tuple(delta_v2(c, nbrs[v], half) for v, c in enumerate(centers))
    return ConstructionGeometry(
        mode=mode,
        dim=len(centers[0]),
        scale=Fraction(scale),
        grid_step=Fraction(grid_step),
        centers=tuple(centers),
        edges=tuple(edges),
        half=half,
        delta=Fraction(delta),
        c2=min_clearance2(centers, edges),
        delta_v2=dv,
        checks=observation_checks(centers, edges, half, delta),
        extra=extra,
    )


def largest_half(centers, edges, delta, dim: int) -> int:
    """Largest box half-side keeping boxes apart and off foreign tubes (0 if none)."""
    lo, hi = 0, max(max(abs(x - y) for x, y in zip(p, q)) for p in centers for q in centers) + 1

    def fits(h: int) -> bool:
        chk = observation_checks(centers, edges, h, delta)
        return chk["boxes_disjoint"] and chk["box_avoids_tube"]

    while lo < hi:
        mid = (lo + hi + 1) // 2
        if fits(mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


def adaptive_geometry(points, edges, min_scale: int = 1, mode: str = ADAPTIVE) -> ConstructionGeometry:
    """Smallest power-of-two refinement of integer ``points`` passing the box/tube checks.

    The tube radius is fixed at two lattice steps; the box half-side is the
    largest one that keeps boxes disjoint and clear of non-incident tubes.
    """
    scale = 1
    while scale < min_scale:
        scale *= 2
    for _ in range(MAX_SCALE_EXP + 1):
        centers = [tuple(scale * x for x in p) for p in points]
        half = largest_half(centers, edges, ADAPTIVE_DELTA, len(centers[0]))
        if half >= 2 * ADAPTIVE_DELTA:
            geo = _geometry(mode, scale, 1, centers, edges, half, ADAPTIVE_DELTA, {})
            if geo.checks_pass():
                return geo
        scale *= 2
    raise ConstructionError("no refinement up to 2^%d separates boxes and tubes" % MAX_SCALE_EXP)


def faithful_geometry(points, edges, n: int) -> ConstructionGeometry:
    """Blow-up by C*n, unit boxes, tube radius just under min delta(v)/10,
    lattice spacing at most delta/100."""
    c2 = min_clearance2(points, edges)
    if not c2 > Fraction(1, 2 * n * n):
        raise ConstructionError(f"clearance {c2} (squared) violates c > 1/(sqrt(2) n)")
    blow = REFINE_CONSTANT * n
    scaled = [tuple(blow * x for x in p) for p in points]
    half_draw = Fraction(1, 2)
    nbrs = [[] for _ in scaled]
    for a, b in edges:
        nbrs[a].append(scaled[b])
        nbrs[b].append(scaled[a])
    gaps = [d for v, c in enumerate(scaled) if (d := delta_v2(c, nbrs[v], half_draw)) is not None]
    if gaps:
        delta = sqrt_below(min(gaps) / 100)
    else:
        delta = half_draw / 10
    m = 2 * ceil(50 / delta)
    centers = [tuple(m * x for x in p) for p in scaled]
    extra = {
        "refine_constant": REFINE_CONSTANT,
        "lattice_factor": m,
        "c_squared_unscaled": c2,
        "delta_drawing": delta,
        "C_prime": delta * n * n,
    }
    return _geometry(PAPER_FAITHFUL, blow, Fraction(1, m), centers, edges, m // 2, delta * m, extra)


def separation_geometry(d: PlanarDrawing, mode: str = ADAPTIVE, min_scale: int = 1):
    """Refine ``d`` uniformly and compute boxes, tubes and clearances.

    Returns the refined drawing (in lattice units) and its geometry.
    """
    mode = _normalize_mode(mode)
    if mode == ADAPTIVE:
        geo = adaptive_geometry(d.positions, d.edges, min_scale)
    else:
        geo = faithful_geometry(d.positions, d.edges, d.n)
    refined = PlanarDrawing(geo.centers, d.edges, d.scale * geo.scale / geo.grid_step)
    return refined, geo


# ---------------------------------------------------------------------------
# Full pipeline
# ---------------------------------------------------------------------------


def build_representation(geo: ConstructionGeometry) -> tuple[Representation, dict]:
    raw = {e: digitize_edge((geo.centers[e[0]], geo.centers[e[1]])) for e in geo.edges}
    paths = reroute_in_boxes(raw, geo)
    geo.paths.clear()
    geo.paths.update(paths)
    return place_obstacles(geo, paths), raw


def embed2d(g: Graph, mode: str = ADAPTIVE, workers: int = 1) -> tuple[Representation, ConstructionGeometry]:
    """Obstacle representation of a planar graph, re-verified before returning."""
    from .visibility import verify

    mode = _normalize_mode(mode)
    drawing = straight_line_embed(g)
    min_scale = 1
    for _ in range(MAX_SCALE_EXP):
        _, geo = separation_geometry(drawing, mode, min_scale)
        rep, _ = build_representation(geo)
        report = verify(rep, g, workers=workers)
        if report.matches:
            return rep, geo
        if mode == PAPER_FAITHFUL:
            raise ConstructionError(f"faithful construction does not verify: {report.to_obj()}")
        min_scale = int(geo.scale) * 2
    raise ConstructionError("adaptive refinement did not converge")


def audit(rep: Representation, geometry: ConstructionGeometry, g: Graph) -> AuditResult:
    return gbg_audit(rep, geometry, g)


def faithful_side(geo: ConstructionGeometry) -> int:
    """Side length (in lattice points) of the faithful grid, without building it."""
    spans = []
    for k in range(geo.dim):
        vals = [c[k] for c in geo.centers]
        spans.append(max(vals) - min(vals) + 2 * geo.half + 3)
    return max(spans)
