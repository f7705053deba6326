"""Component obstacles, a desk-scale exact obstacle-number search, and the
crossing-paths-imply-C4 invariant."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Optional

import numpy as np
from scipy import ndimage
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .grid import BLOCKED, Graph, GridObsError, Point, Representation, is_manhattan_path, l1
from .visibility import verify, witness_path

# Dense labelling is used for blocked-default representations up to this volume.
_DENSE_VOLUME = 200_000_000
# Components are listed point by point only below this many obstacles.
_LIST_LIMIT = 2_000_000


@dataclass(frozen=True)
class ComponentDecomposition:
    count: int
    components: Optional[tuple[frozenset, ...]]
    obstacle_count: int


def _unit_offsets(dim: int) -> list[tuple[int, ...]]:
    out = []
    for k in range(dim):
        d = [0] * dim
        d[k] = 1
        out.append(tuple(d))
    return out


def _sparse_components(points: list[Point], dim: int) -> ComponentDecomposition:
    index = {p: i for i, p in enumerate(points)}
    rows, cols = [], []
    for p, i in index.items():
        for d in _unit_offsets(dim):
            j = index.get(tuple(x + y for x, y in zip(p, d)))
            if j is not None:
                rows.append(i)
                cols.append(j)
    m = len(points)
    adj = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(m, m))
    count, labels = connected_components(adj, directed=False)
    groups: list[set] = [set() for _ in range(count)]
    for p, lab in zip(points, labels):
        groups[lab].add(p)
    comps = tuple(sorted((frozenset(s) for s in groups), key=lambda s: min(s)))
    return ComponentDecomposition(count, comps, m)


def component_obstacles(rep: Representation) -> ComponentDecomposition:
    """Maximal obstacle sets connected through unit lattice steps (4- or 6-adjacency)."""
    if rep.default != BLOCKED or rep.volume() <= _LIST_LIMIT:
        return _sparse_components(list(rep.obstacles()), rep.dim)
    if rep.volume() > _DENSE_VOLUME:
        raise GridObsError(f"representation volume {rep.volume()} too large to label")
    lo, hi = rep.bounds
    shape = tuple(h - l + 1 for l, h in zip(lo, hi))
    arr = np.ones(shape, dtype=bool)
    for p in list(rep.cells) + list(rep.vertices):
        arr[tuple(x - l for x, l in zip(p, lo))] = False
    _, count = ndimage.label(arr, structure=ndimage.generate_binary_structure(rep.dim, 1))
    return ComponentDecomposition(int(count), None, int(arr.sum()))


# ---------------------------------------------------------------------------
# Exact obstacle number within a window
# ---------------------------------------------------------------------------

MAX_ORACLE_N = 5
MAX_WINDOW = 7
MAX_CAP = 6


def _small_witness(a: Point, b: Point, blocked: set) -> Optional[list[Point]]:
    """Monotone path from a to b avoiding ``blocked`` (endpoints exempt), x-steps first."""
    sx = 1 if b[0] >= a[0] else -1
    sy = 1 if b[1] >= a[1] else -1
    w, h = abs(b[0] - a[0]), abs(b[1] - a[1])

    def pt(i, j):
        return (a[0] + sx * i, a[1] + sy * j)

    # co-reachability of b, filled backwards
    ok = [[False] * (h + 1) for _ in range(w + 1)]
    for i in range(w, -1, -1):
        for j in range(h, -1, -1):
            if (i, j) == (w, h):
                ok[i][j] = True
                continue
            if (i, j) != (0, 0) and pt(i, j) in blocked:
                continue
            ok[i][j] = (i < w and ok[i + 1][j]) or (j < h and ok[i][j + 1])
    if not ok[0][0]:
        return None
    i = j = 0
    out = [a]
    while (i, j) != (w, h):
        if i < w and ok[i + 1][j]:
            i += 1
        else:
            j += 1
        out.append(pt(i, j))
    return out


def _dihedral(points, square: bool):
    maps = [lambda x, y: (x, y), lambda x, y: (-x, y), lambda x, y: (x, -y), lambda x, y: (-x, -y)]
    if square:
        maps += [lambda x, y: (y, x), lambda x, y: (-y, x), lambda x, y: (y, -x), lambda x, y: (-y, -x)]
    for f in maps:
        q = [f(*p) for p in points]
        mx = min(x for x, _ in q)
        my = min(y for _, y in q)
        yield tuple(sorted((x - mx, y - my) for x, y in q))


def _placements(n: int, w: int, h: int):
    """Point sets in the window, one per class under translation and symmetry."""
    cells = [(x, y) for x in range(w) for y in range(h)]
    for s in combinations(cells, n):
        if min(x for x, _ in s) or min(y for _, y in s):
            continue
        if s == min(_dihedral(s, w == h)):
            yield s


def _automorphisms(g: Graph) -> list[tuple[int, ...]]:
    return [p for p in permutations(range(g.n)) if all(g.has_edge(p[u], p[v]) for u, v in g.edges)]


def _labelings(g: Graph, autos) -> list[tuple[int, ...]]:
    """Bijections vertex -> slot, one per orbit under the automorphism group."""
    out = []
    for perm in permutations(range(g.n)):
        if all(perm <= tuple(perm[a[v]] for v in range(g.n)) for a in autos):
            out.append(perm)
    return out


def _disjoint_lower_bound(pairs: list[tuple[Point, Point]]) -> int:
    """Greedy count of pairs whose blocking candidates (box minus ends) are disjoint."""
    used: set = set()
    count = 0
    for a, b in sorted(pairs, key=lambda e: l1(*e)):
        xs = range(min(a[0], b[0]), max(a[0], b[0]) + 1)
        ys = range(min(a[1], b[1]), max(a[1], b[1]) + 1)
        cand = {(x, y) for x in xs for y in ys} - {a, b}
        if not cand & used:
            used |= cand
            count += 1
    return count


def _feasible(pos: list[Point], g: Graph, budget: int) -> Optional[frozenset]:
    """Smallest-first search for at most ``budget`` obstacles realizing g at ``pos``."""
    verts = set(pos)
    edges = g.sorted_edges()
    non_edges = g.non_edges()
    seen: set[frozenset] = set()

    def rec(obs: frozenset, left: int) -> Optional[frozenset]:
        if obs in seen:
            return None
        seen.add(obs)
        blocked = verts | obs
        for u, v in edges:
            if _small_witness(pos[u], pos[v], blocked - {pos[u], pos[v]}) is None:
                return None
        open_pairs = []
        for u, v in non_edges:
            w = _small_witness(pos[u], pos[v], blocked - {pos[u], pos[v]})
            if w is not None:
                open_pairs.append(w)
        if not open_pairs:
            return obs
        if left == 0 or _disjoint_lower_bound([(w[0], w[-1]) for w in open_pairs]) > left:
            return None
        target = min(open_pairs, key=len)
        for p in target[1:-1]:
            found = rec(obs | {p}, left - 1)
            if found is not None:
                return found
        return None

    return rec(frozenset(), budget)


@dataclass(frozen=True)
class ObsnumResult:
    value: Optional[int]
    representation: Optional[Representation]
    window: tuple[int, int]
    cap: int

    def to_obj(self) -> dict:
        from .grid import representation_to_obj

        return {
            "obstacle_number_upper_bound": self.value,
            "window": list(self.window),
            "cap": self.cap,
            "note": "minimum over placements inside the window; an upper bound on the unrestricted value",
            "representation": None if self.representation is None else representation_to_obj(self.representation),
        }


def obsnum_search(g: Graph, window_w: int, window_h: int, obstacle_cap: int) -> ObsnumResult:
    if g.n > MAX_ORACLE_N:
        raise GridObsError(f"exact search supports n <= {MAX_ORACLE_N}")
    if not (1 <= window_w <= MAX_WINDOW and 1 <= window_h <= MAX_WINDOW):
        raise GridObsError(f"window must be within {MAX_WINDOW}x{MAX_WINDOW}")
    if not 0 <= obstacle_cap <= MAX_CAP:
        raise GridObsError(f"obstacle cap must be within 0..{MAX_CAP}")
    if g.n > window_w * window_h:
        return ObsnumResult(None, None, (window_w, window_h), obstacle_cap)
    autos = _automorphisms(g)
    labelings = _labelings(g, autos)
    sets = list(_placements(g.n, window_w, window_h))
    for k in range(obstacle_cap + 1):
        for s in sets:
            for lab in labelings:
                pos = [s[lab[v]] for v in range(g.n)]
                obs = _feasible(pos, g, k)
                if obs is not None:
                    rep = Representation(2, "free", tuple(pos), obs)
                    return ObsnumResult(len(obs), rep, (window_w, window_h), obstacle_cap)
    return ObsnumResult(None, None, (window_w, window_h), obstacle_cap)


def obsnum_exact(g: Graph, window_w: int, window_h: int, obstacle_cap: int) -> Optional[int]:
    """Fewest obstacles (at most the cap) over placements inside the window."""
    return obsnum_search(g, window_w, window_h, obstacle_cap).value


# ---------------------------------------------------------------------------
# Crossing witnesses and four-cycles
# ---------------------------------------------------------------------------


def crossing_c4_check(rep: Representation, g: Graph) -> bool:
    """Splice every pair of crossing witness paths and demand the result be an edge.

    Two witnesses of vertex-disjoint edges that meet at a point can be cut and
    recombined there; whenever a recombination is still a shortest path, its
    endpoints see each other, so on a correct representation they are adjacent.
    """
    if not verify(rep, g).matches:
        raise GridObsError("crossing check needs a representation that verifies")
    paths = {}
    where: dict[Point, list[tuple[int, int]]] = {}
    for e in g.sorted_edges():
        w = witness_path(rep, *e)
        paths[e] = w
        for i, p in enumerate(w[1:-1], start=1):
            where.setdefault(p, []).append(e)
    checked = set()
    for p, es in where.items():
        for e1, e2 in combinations(es, 2):
            if set(e1) & set(e2) or (e1, e2, p) in checked:
                continue
            checked.add((e1, e2, p))
            w1, w2 = paths[e1], paths[e2]
            i, j = w1.index(p), w2.index(p)
            halves1 = [(e1[0], w1[: i + 1]), (e1[1], w1[i:][::-1])]
            halves2 = [(e2[0], w2[: j + 1]), (e2[1], w2[j:][::-1])]
            for a, h1 in halves1:
                for b, h2 in halves2:
                    spliced = tuple(h1) + tuple(h2[::-1][1:])
                    if is_manhattan_path(spliced) and not g.has_edge(a, b):
                        return False
    return True


def has_c4(g: Graph) -> bool:
    """Whether g contains a four-cycle as a subgraph."""
    adj = g.adjacency
    for a, c in combinations(range(g.n), 2):
        if len(adj[a] & adj[c]) >= 2:
            return True
    return False
