"""Box/tube machinery shared by the planar and the three-dimensional pipelines.

All quantities here are in lattice units: vertex centers are integer points,
a box is the closed cube of half-side ``half`` around its center, and a tube
is the set of points within ``delta`` of a straight edge segment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Optional, Sequence

import numpy as np

from .geometry import (
    cross2,
    cross3,
    dot,
    norm2,
    point_segment_dist2,
    segment_segment_dist2,
    sin2_between,
    sub,
)
from .grid import BLOCKED, ConstructionError, GridObsError, Graph, LatticePath, Point, Representation

Edge = tuple[int, int]


@dataclass(frozen=True)
class ConstructionGeometry:
    """Boxes, tubes and per-edge lattice paths of one construction run.

    ``centers``, ``half``, ``delta`` and ``c2`` are in lattice units.
    ``grid_step`` is the length of one lattice step measured in the refined
    drawing, so ``epsilon`` and ``delta_drawing`` convert back to drawing units.
    """

    mode: str
    dim: int
    scale: Fraction
    grid_step: Fraction
    centers: tuple[Point, ...]
    edges: tuple[Edge, ...]
    half: int
    delta: Fraction
    c2: Fraction
    delta_v2: tuple[Optional[Fraction], ...]
    checks: dict
    paths: dict = field(default_factory=dict, compare=False)
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def epsilon(self) -> Fraction:
        """Box side length in drawing units."""
        return 2 * self.half * self.grid_step

    @property
    def delta_drawing(self) -> Fraction:
        return self.delta * self.grid_step

    def box(self, v: int) -> tuple[Point, Point]:
        c = self.centers[v]
        return tuple(x - self.half for x in c), tuple(x + self.half for x in c)

    def in_box(self, v: int, p: Sequence[int]) -> bool:
        return all(abs(x - y) <= self.half for x, y in zip(p, self.centers[v]))

    def tube(self, e: Edge) -> tuple[Point, Point, Fraction]:
        return self.centers[e[0]], self.centers[e[1]], self.delta

    def in_tube(self, e: Edge, p: Sequence[int]) -> bool:
        a, b, r = self.tube(e)
        return lattice_in_tube(p, a, b, r * r)

    def checks_pass(self) -> bool:
        return all(self.checks.values())

    def to_obj(self) -> dict:
        def q(x):
            return None if x is None else str(x)

        return {
            "mode": self.mode,
            "dim": self.dim,
            "scale": q(self.scale),
            "grid_step": q(self.grid_step),
            "epsilon": q(self.epsilon),
            "delta": q(self.delta_drawing),
            "box_half_side_lattice": self.half,
            "tube_radius_lattice": q(self.delta),
            "c_squared_lattice": q(self.c2),
            "delta_v_squared_lattice": [q(x) for x in self.delta_v2],
            "centers": [list(p) for p in self.centers],
            "edges": [list(e) for e in self.edges],
            "checks": dict(self.checks),
            "extra": {k: q(v) if isinstance(v, Fraction) else v for k, v in self.extra.items()},
        }


def lattice_in_tube(p: Sequence[int], a: Sequence[int], b: Sequence[int], r2: Fraction) -> bool:
    """Integer-only test of dist(p, segment ab) <= sqrt(r2) for lattice inputs."""
    ab = [y - x for x, y in zip(a, b)]
    ap = [y - x for x, y in zip(a, p)]
    t = sum(x * y for x, y in zip(ap, ab))
    den = sum(x * x for x in ab)
    if t <= 0 or den == 0:
        d2 = sum(x * x for x in ap)
        return d2 <= r2
    if t >= den:
        d2 = sum((y - x) ** 2 for x, y in zip(b, p))
        return d2 <= r2
    # squared perpendicular distance times den
    return sum(x * x for x in ap) * den - t * t <= r2 * den


# ---------------------------------------------------------------------------
# Separation predicates
# ---------------------------------------------------------------------------


def min_clearance2(centers: Sequence[Sequence], edges: Sequence[Edge]) -> Fraction:
    """Squared minimum over vertex-to-non-incident-segment and vertex-to-vertex distances."""
    best: Optional[Fraction] = None
    for v, p in enumerate(centers):
        for a, b in edges:
            if v in (a, b):
                continue
            d = point_segment_dist2(p, centers[a], centers[b])
            best = d if best is None or d < best else best
    for p, q in combinations(centers, 2):
        d = Fraction(norm2(sub(p, q)))
        best = d if best is None or d < best else best
    if best is None:
        raise GridObsError("clearance needs at least two vertices")
    return best


def observation_checks(
    centers: Sequence[Sequence], edges: Sequence[Edge], half, delta
) -> dict[str, bool]:
    """Disjointness of boxes and tubes, decided exactly.

    tubes_disjoint: tubes of vertex-disjoint edges do not meet.
    incident_tubes_in_box: tubes of edges sharing v meet only inside v's box.
    box_avoids_tube: no box touches the tube of an edge not incident to it.
    boxes_disjoint: boxes of distinct vertices do not meet.
    """
    dim = len(centers[0]) if centers else 2
    half = Fraction(half)
    delta = Fraction(delta)
    four_d2 = 4 * delta * delta
    out = {"tubes_disjoint": True, "incident_tubes_in_box": True, "box_avoids_tube": True, "boxes_disjoint": True}

    for (a, b), (c, d) in combinations(edges, 2):
        shared = {a, b} & {c, d}
        if not shared:
            if segment_segment_dist2(centers[a], centers[b], centers[c], centers[d]) <= four_d2:
                out["tubes_disjoint"] = False
            continue
        v = shared.pop()
        o1 = b if a == v else a
        o2 = d if c == v else c
        u = sub(centers[o1], centers[v])
        w = sub(centers[o2], centers[v])
        radius = half - delta
        if radius <= 0:
            out["incident_tubes_in_box"] = False
        elif dot(u, w) <= 0:
            if radius * radius <= four_d2:
                out["incident_tubes_in_box"] = False
        elif radius * radius * sin2_between(u, w) <= four_d2:
            out["incident_tubes_in_box"] = False

    # dist(v, e) > half*sqrt(dim) + delta, squared out without radicals
    for v, p in enumerate(centers):
        for a, b in edges:
            if v in (a, b):
                continue
            slack = point_segment_dist2(p, centers[a], centers[b]) - half * half * dim - delta * delta
            if slack <= 0 or slack * slack <= 4 * half * half * delta * delta * dim:
                out["box_avoids_tube"] = False

    for p, q in combinations(centers, 2):
        if max(abs(x - y) for x, y in zip(p, q)) <= 2 * half:
            out["boxes_disjoint"] = False
    return out


def boundary_hits(center: Sequence, others: Sequence[Sequence], half) -> list[tuple]:
    """Where the segments from center to each of ``others`` leave the box."""
    half = Fraction(half)
    hits = []
    for o in others:
        d = sub(o, center)
        t = half / max(abs(x) for x in d)
        hits.append(tuple(Fraction(c) + t * x for c, x in zip(center, d)))
    return hits


def _perimeter_position(rel: Sequence[Fraction], h: Fraction) -> Fraction:
    x, y = rel
    if y == -h:
        return x + h
    if x == h:
        return 2 * h + y + h
    if y == h:
        return 4 * h + h - x
    return 6 * h + h - y


def delta_v2(center: Sequence, others: Sequence[Sequence], half) -> Optional[Fraction]:
    """Squared minimum gap between consecutive boundary crossings at a vertex.

    In the plane "consecutive" follows the box perimeter.  In space there is
    no cyclic order, so every pair counts.  Degree below two gives ``None``.
    """
    if len(others) < 2:
        return None
    pts = boundary_hits(center, others, half)
    if len(center) == 2:
        h = Fraction(half)
        pts.sort(key=lambda p: _perimeter_position(sub(p, center), h))
        pairs = [(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))]
    else:
        pairs = list(combinations(pts, 2))
    return min(Fraction(norm2(sub(p, q))) for p, q in pairs)


# ---------------------------------------------------------------------------
# Digitization
# ---------------------------------------------------------------------------


def _line_key(q: Sequence[int], a: Sequence[int], ab: Sequence[int]) -> int:
    # proportional to the squared distance from q to the line through a along ab
    aq = sub(q, a)
    if len(ab) == 2:
        return cross2(aq, ab) ** 2
    return norm2(cross3(aq, ab))


def digitize_lattice(a: Point, b: Point) -> LatticePath:
    """Greedy staircase from a to b that hugs the straight segment.

    Each step goes along whichever still-needed axis lands closest to the
    line, ties going to the lower axis.
    """
    dim = len(a)
    ab = sub(b, a)
    sign = [(x > 0) - (x < 0) for x in ab]
    p = list(a)
    path = [tuple(a)]
    while True:
        best = None
        for k in range(dim):
            if p[k] == b[k]:
                continue
            q = list(p)
            q[k] += sign[k]
            key = _line_key(q, a, ab)
            if best is None or key < best[0]:
                best = (key, q)
        if best is None:
            break
        p = best[1]
        path.append(tuple(p))
    return tuple(path)


def max_deviation2(path: Sequence[Sequence], a: Sequence, b: Sequence) -> Fraction:
    return max(point_segment_dist2(p, a, b) for p in path)


def digitize_edge(segment, grid_step=1, tube_radius=None) -> LatticePath:
    """Digitize a rational segment onto the lattice of spacing ``grid_step``.

    The result is expressed in lattice indices (coordinate / grid_step).
    Every point stays within sqrt(2)*grid_step of the segment, and within
    ``tube_radius`` when one is given.
    """
    step = Fraction(grid_step)
    if step <= 0:
        raise GridObsError("grid_step must be positive")
    ends = []
    for p in segment:
        idx = [Fraction(x) / step for x in p]
        if any(x.denominator != 1 for x in idx):
            raise GridObsError(f"segment endpoint {tuple(p)} is off the lattice of step {step}")
        ends.append(tuple(int(x) for x in idx))
    a, b = ends
    path = digitize_lattice(a, b)
    dev2 = max_deviation2(path, a, b)
    if dev2 > 2:
        raise ConstructionError(f"digitized path strays {dev2} (squared) from its segment")
    if tube_radius is not None and dev2 * step * step > Fraction(tube_radius) ** 2:
        raise ConstructionError("digitized path leaves its tube")
    return path


# ---------------------------------------------------------------------------
# Rerouting inside boxes
# ---------------------------------------------------------------------------


def _walk(p: list, target: Sequence[int], axes: Sequence[int], out: list) -> None:
    for k in axes:
        s = 1 if target[k] > p[k] else -1
        while p[k] != target[k]:
            p[k] += s
            out.append(tuple(p))


def _reroute_tail(path: LatticePath, center: Point, half: int) -> LatticePath:
    dim = len(center)

    def inside(p):
        return all(abs(x - c) <= half for x, c in zip(p, center))

    i = next(k for k, p in enumerate(path) if inside(p))
    if i == 0:
        raise ConstructionError(f"path starts inside the box of {center}")
    p, q = path[i], path[i - 1]
    k = next(j for j in range(dim) if p[j] != q[j])
    others_on_rim = [j for j in range(dim) if j != k and abs(p[j] - center[j]) == half]
    prefix = list(path[:i])
    cur = list(q)
    if others_on_rim:
        # entry on a corner (or a cube edge): sidestep first, then enter a side
        if half < 2:
            raise ConstructionError("box too small for a corner bypass")
        for j in others_on_rim:
            cur[j] += 1 if center[j] > cur[j] else -1
            prefix.append(tuple(cur))
    cur[k] += p[k] - q[k]
    prefix.append(tuple(cur))
    # along the entered side to the axis line through the center, then inward
    _walk(cur, center, [j for j in range(dim) if j != k] + [k], prefix)
    return tuple(prefix)


def reroute_path(path: LatticePath, centers: tuple[Point, Point], half: int) -> LatticePath:
    """Apply the in-box rerouting at both ends of one edge path."""
    u, v = centers
    if path[0] != u or path[-1] != v:
        raise ConstructionError("path endpoints do not match the edge")
    tail = _reroute_tail(path, v, half)
    head = _reroute_tail(tail[::-1], u, half)
    return head[::-1]


def reroute_in_boxes(paths: dict[Edge, LatticePath], geometry: ConstructionGeometry) -> dict[Edge, LatticePath]:
    out = {}
    for (u, v), path in paths.items():
        out[(u, v)] = reroute_path(path, (geometry.centers[u], geometry.centers[v]), geometry.half)
    return out


# ---------------------------------------------------------------------------
# Obstacle placement
# ---------------------------------------------------------------------------


def box_structure(center: Point, half: int) -> set[Point]:
    """Free lattice points of a box: its sides (or faces) minus the rim, and
    the axis lines through the center."""
    dim = len(center)
    pts: set[Point] = set()
    inner = range(-half + 1, half)
    for k in range(dim):
        for s in (-half, half):
            for rest in product(inner, repeat=dim - 1):
                off = list(rest)
                off.insert(k, s)
                pts.add(tuple(c + o for c, o in zip(center, off)))
        for t in range(-half, half + 1):
            off = [0] * dim
            off[k] = t
            pts.add(tuple(c + o for c, o in zip(center, off)))
    pts.discard(tuple(center))
    return pts


def place_obstacles(geometry: ConstructionGeometry, paths: dict[Edge, LatticePath]) -> Representation:
    """Everything is an obstacle except the edge paths and the box structures."""
    free: set[Point] = set()
    for p in paths.values():
        free.update(p)
    for v, c in enumerate(geometry.centers):
        free |= box_structure(c, geometry.half)
    free.difference_update(geometry.centers)
    lo = [min(c[k] for c in geometry.centers) - geometry.half - 1 for k in range(geometry.dim)]
    hi = [max(c[k] for c in geometry.centers) + geometry.half + 1 for k in range(geometry.dim)]
    return Representation(
        geometry.dim, BLOCKED, tuple(geometry.centers), frozenset(free), (tuple(lo), tuple(hi))
    )


# ---------------------------------------------------------------------------
# Green-blue-green audit
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AuditResult:
    ok: bool
    counterexample: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


def _tube_violations(geometry: ConstructionGeometry, e: Edge, blue, pts: np.ndarray, own: bool) -> bool:
    """Whether some blue point is outside its own tube (own=True) or inside a
    foreign one.  A float pass narrows the candidates; the verdict is exact."""
    a, b, r = geometry.tube(e)
    fa = np.asarray(a, dtype=float)
    ab = np.asarray(b, dtype=float) - fa
    rel = pts - fa
    t = np.clip(rel @ ab / (ab @ ab), 0.0, 1.0)
    d2 = ((rel - np.outer(t, ab)) ** 2).sum(axis=1)
    r2 = float(r * r)
    if own:
        cand = np.nonzero(d2 > r2 - 1.0)[0]
        return any(not lattice_in_tube(blue[k], a, b, r * r) for k in cand)
    cand = np.nonzero(d2 < r2 + 1.0)[0]
    return any(lattice_in_tube(blue[k], a, b, r * r) for k in cand)


def gbg_audit(rep: Representation, geometry: ConstructionGeometry, g: Graph) -> AuditResult:
    """Check that each canonical witness is green, then blue, then green.

    Green means inside the box of an endpoint, blue means outside every box
    and inside the tube of the pair's own edge only.
    """
    from .visibility import visibility_graph, witness_path

    n = len(geometry.centers)
    vis = visibility_graph(rep)
    for u, v in vis.sorted_edges():
        w = witness_path(rep, u, v)
        i = 0
        while i < len(w) and geometry.in_box(u, w[i]):
            i += 1
        j = len(w)
        while j > i and geometry.in_box(v, w[j - 1]):
            j -= 1
        blue = w[i:j]
        if not blue:
            continue
        if (u, v) not in g.edges:
            return AuditResult(False, (u, v, w))
        pts = np.asarray(blue, dtype=np.int64)
        for x in range(n):
            lo, hi = geometry.box(x)
            if np.any(np.all((pts >= lo) & (pts <= hi), axis=1)):
                return AuditResult(False, (u, v, w))
        for e in geometry.edges:
            own = e == (u, v)
            if _tube_violations(geometry, e, blue, pts, own):
                return AuditResult(False, (u, v, w))
    return AuditResult(True)
