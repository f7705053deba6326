"""Point-set instances for the hardness reduction, the geodesic-drawing to
obstacle-representation stretch, and a small exhaustive decider for placing
an obstacle representation onto prescribed points."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional, Sequence

from .grid import BLOCKED, ConstructionError, Graph, GridObsError, Point, Representation, is_manhattan_path
from .visibility import verify

GPSE = "gpse"
OEPS = "oeps"

YES, NO, UNKNOWN = "yes", "no", "unknown"

MAX_DECIDE_N = 6
MAX_DECIDE_AREA = 400
DEFAULT_NODE_CAP = 200_000


@dataclass(frozen=True)
class PointSetInstance:
    p0: tuple[Point, ...]
    p1: tuple[Point, ...]
    p2: tuple[Point, ...]
    variant: str
    n: int
    k1: int
    k2: int

    @property
    def points(self) -> tuple[Point, ...]:
        return self.p0 + self.p1 + self.p2

    def to_obj(self) -> dict:
        return {
            "variant": self.variant,
            "n": self.n,
            "k1": self.k1,
            "k2": self.k2,
            "p0": [list(p) for p in self.p0],
            "p1": [list(p) for p in self.p1],
            "p2": [list(p) for p in self.p2],
        }


def _check_params(n: int, k1: int, k2: int) -> None:
    if n < 4 or n % 2:
        raise GridObsError(f"n must be even and at least 4, got {n}")
    if k1 < 0 or k2 < 0 or k1 + k2 != n // 2 + 1:
        raise GridObsError(f"need k1, k2 >= 0 with k1 + k2 = {n // 2 + 1}, got {k1} + {k2}")


def _instance(n: int, k1: int, k2: int, variant: str) -> PointSetInstance:
    _check_params(n, k1, k2)
    s = 1 if variant == GPSE else 2
    p0 = tuple((-j, 0) for j in range(2 * n - 1))
    p1 = tuple((s * j, s * n * j) for j in range(1, k1 + 1))
    p2 = tuple((s * j, -s * n * j) for j in range(1, k2 + 1))
    return PointSetInstance(p0, p1, p2, variant, n, k1, k2)


def gpse_points(n: int, k1: int, k2: int) -> PointSetInstance:
    """Collinear run on the negative x-axis plus two steep rays of points."""
    return _instance(n, k1, k2, GPSE)


def oeps_points(n: int, k1: int, k2: int) -> PointSetInstance:
    """Same collinear run; the rays are stretched by two in both coordinates."""
    return _instance(n, k1, k2, OEPS)


# ---------------------------------------------------------------------------
# Geodesic drawing -> representation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeodesicDrawing:
    positions: tuple[Point, ...]
    paths: dict = field(default_factory=dict)  # edge (u, v) with u < v -> lattice path from u to v

    def graph(self) -> Graph:
        return Graph.from_edges(len(self.positions), list(self.paths))


def _stretch(p: Point, uniform: bool = False) -> Point:
    x, y = p
    return (2 * x if x >= 0 or uniform else x, 2 * y)


def _fill(a: Point, b: Point) -> list[Point]:
    """Unit steps from a to b along the single axis they differ on (a excluded)."""
    if a[0] != b[0] and a[1] != b[1]:
        raise GridObsError(f"stretched step {a} -> {b} is not axis-parallel")
    k = 0 if a[0] != b[0] else 1
    s = 1 if b[k] > a[k] else -1
    out = []
    cur = list(a)
    while tuple(cur) != b:
        cur[k] += s
        out.append(tuple(cur))
    return out


def stretch_path(path: Sequence[Point], uniform: bool = False) -> tuple[Point, ...]:
    out = [_stretch(path[0], uniform)]
    for p in path[1:]:
        out.extend(_fill(out[-1], _stretch(p, uniform)))
    return tuple(out)


def _check_drawing(d: GeodesicDrawing) -> None:
    pos = [tuple(p) for p in d.positions]
    if len(set(pos)) != len(pos):
        raise GridObsError("vertex positions must be distinct")
    vset = set(pos)
    owner: dict[Point, tuple[int, int]] = {}
    for (u, v), path in d.paths.items():
        path = [tuple(p) for p in path]
        if path[0] != pos[u] or path[-1] != pos[v]:
            raise GridObsError(f"path for edge ({u}, {v}) does not join its endpoints")
        if not is_manhattan_path(path):
            raise GridObsError(f"path for edge ({u}, {v}) is not a Manhattan path")
        for p in path[1:-1]:
            if p in vset:
                raise GridObsError(f"path for edge ({u}, {v}) passes through a vertex at {p}")
            if p in owner:
                raise GridObsError(f"paths for edges {owner[p]} and ({u}, {v}) share the point {p}")
            owner[p] = (u, v)


def geodesic_to_rep(d: GeodesicDrawing, uniform: bool = False) -> Representation:
    """Insert blank rows everywhere and blank columns for x >= 0, then block
    everything off the stretched paths.

    Columns at x < 0 are left alone so the collinear run of points keeps its
    coordinates.  Two paths in adjacent columns there stay adjacent, which can
    let a shortest path hop between them; the result is therefore verified and
    a ConstructionError raised if it does not match.  ``uniform=True`` doubles
    the negative half too, which keeps every pair of paths apart.
    """
    _check_drawing(d)
    verts = tuple(_stretch(tuple(p), uniform) for p in d.positions)
    free: set = set()
    for path in d.paths.values():
        free.update(stretch_path([tuple(p) for p in path], uniform)[1:-1])
    pts = list(verts) + list(free)
    lo = (min(p[0] for p in pts) - 1, min(p[1] for p in pts) - 1)
    hi = (max(p[0] for p in pts) + 1, max(p[1] for p in pts) + 1)
    rep = Representation(2, BLOCKED, verts, frozenset(free), (lo, hi))
    report = verify(rep, d.graph())
    if not report.matches:
        raise ConstructionError(
            f"stretched drawing sees extra pairs {sorted(report.extra_edges)}; retry with uniform=True"
        )
    return rep


# ---------------------------------------------------------------------------
# Decider
# ---------------------------------------------------------------------------


def _monotone_paths(a: Point, b: Point, avoid: set):
    """Manhattan paths from a to b in lexicographic order, interiors avoiding ``avoid``."""
    sx = 1 if b[0] >= a[0] else -1
    sy = 1 if b[1] >= a[1] else -1
    path = [a]

    def rec(p):
        if p == b:
            yield tuple(path)
            return
        nxt = []
        if p[0] != b[0]:
            nxt.append((p[0] + sx, p[1]))
        if p[1] != b[1]:
            nxt.append((p[0], p[1] + sy))
        for q in sorted(nxt):
            if q != b and q in avoid:
                continue
            path.append(q)
            yield from rec(q)
            path.pop()

    yield from rec(a)


def _sees(a: Point, b: Point, passable: set) -> bool:
    sx = 1 if b[0] >= a[0] else -1
    sy = 1 if b[1] >= a[1] else -1
    w, h = abs(b[0] - a[0]), abs(b[1] - a[1])
    reach = [[False] * (h + 1) for _ in range(w + 1)]
    reach[0][0] = True
    for i in range(w + 1):
        for j in range(h + 1):
            if (i, j) == (0, 0):
                continue
            if (i, j) != (w, h) and (a[0] + sx * i, a[1] + sy * j) not in passable:
                continue
            reach[i][j] = (i > 0 and reach[i - 1][j]) or (j > 0 and reach[i][j - 1])
    return reach[w][h]


class _Budget:
    def __init__(self, cap: int):
        self.left = cap
        self.truncated = False

    def spend(self) -> bool:
        self.left -= 1
        if self.left < 0:
            self.truncated = True
            return False
        return True


def _search_bijection(g: Graph, pos: list[Point], budget: _Budget) -> Optional[frozenset]:
    vset = set(pos)
    edges = sorted(
        g.sorted_edges(),
        key=lambda e: ((abs(pos[e[0]][0] - pos[e[1]][0]) + 1) * (abs(pos[e[0]][1] - pos[e[1]][1]) + 1), e),
    )
    non_edges = g.non_edges()

    def clean(passable: set) -> bool:
        return not any(_sees(pos[u], pos[v], passable) for u, v in non_edges)

    def rec(k: int, passable: frozenset) -> Optional[frozenset]:
        if k == len(edges):
            return passable
        u, v = edges[k]
        for path in _monotone_paths(pos[u], pos[v], vset):
            if not budget.spend():
                return None
            nxt = passable | set(path[1:-1])
            if clean(nxt):
                found = rec(k + 1, nxt)
                if found is not None:
                    return found
            if budget.truncated:
                return None
        return None

    if not clean(set()):
        return None
    return rec(0, frozenset())


@dataclass(frozen=True)
class OepsResult:
    answer: str
    representation: Optional[Representation]
    explored: int

    def to_obj(self) -> dict:
        from .grid import representation_to_obj

        return {
            "answer": self.answer,
            "explored": self.explored,
            "representation": None if self.representation is None else representation_to_obj(self.representation),
        }


def oeps_search(g: Graph, s: Sequence[Point], node_cap: int = DEFAULT_NODE_CAP, workers: int = 1) -> OepsResult:
    s = [tuple(p) for p in s]
    if len(s) != g.n:
        raise GridObsError(f"{len(s)} points for {g.n} vertices")
    if len(set(s)) != len(s):
        raise GridObsError("points must be distinct")
    if g.n > MAX_DECIDE_N:
        raise GridObsError(f"decider supports at most {MAX_DECIDE_N} vertices")
    if not s:
        return OepsResult(YES, Representation(2, BLOCKED, (), frozenset(), ((0, 0), (0, 0))), 0)
    lo = (min(p[0] for p in s), min(p[1] for p in s))
    hi = (max(p[0] for p in s), max(p[1] for p in s))
    if (hi[0] - lo[0] + 1) * (hi[1] - lo[1] + 1) > MAX_DECIDE_AREA:
        raise GridObsError(f"point bounding box exceeds area {MAX_DECIDE_AREA}")
    bounds = ((lo[0] - 1, lo[1] - 1), (hi[0] + 1, hi[1] + 1))
    bijections = list(permutations(range(g.n)))

    def attempt(perm):
        budget = _Budget(node_cap)
        pos = [s[perm[v]] for v in range(g.n)]
        free = _search_bijection(g, pos, budget)
        return pos, free, budget

    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            results = list(ex.map(attempt, bijections))
    else:
        results = map(attempt, bijections)
    explored = 0
    truncated = False
    for pos, free, budget in results:
        explored += node_cap - max(budget.left, 0)
        truncated |= budget.truncated
        if free is not None:
            rep = Representation(2, BLOCKED, tuple(pos), frozenset(free), bounds)
            if verify(rep, g).matches:
                return OepsResult(YES, rep, explored)
    return OepsResult(UNKNOWN if truncated else NO, None, explored)


def oeps_decide(g: Graph, s: Sequence[Point], node_cap: int = DEFAULT_NODE_CAP, workers: int = 1) -> str:
    """Whether g has an obstacle representation with its vertices on exactly the points s."""
    return oeps_search(g, s, node_cap, workers).answer
