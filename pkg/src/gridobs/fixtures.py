"""Concrete representations of classic graph families.

Each generator returns ``(graph, representation)`` and re-verifies the pair
before handing it out, so a broken layout fails loudly instead of silently.
"""

from __future__ import annotations

from typing import Callable

from .grid import BLOCKED, FREE, ConstructionError, Graph, GridObsError, Representation


def _rep(vertices, obstacles=(), default=FREE, bounds=None) -> Representation:
    return Representation(2, default, tuple(map(tuple, vertices)), frozenset(map(tuple, obstacles)), bounds)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise GridObsError(msg)


def path(n: int):
    _need(n >= 1, "path needs n >= 1")
    g = Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    return g, _rep([(i, 0) for i in range(n)])


def complete(n: int):
    _need(n >= 1, "complete needs n >= 1")
    g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
    return g, _rep([(i, i) for i in range(n)])


def empty(n: int):
    _need(n >= 1, "empty needs n >= 1")
    return Graph(n, frozenset()), _rep([(2 * i, 0) for i in range(n)], [(2 * i + 1, 0) for i in range(n - 1)])


def matching(k: int):
    _need(k >= 1, "matching needs k >= 1")
    g = Graph.from_edges(2 * k, [(2 * i, 2 * i + 1) for i in range(k)])
    verts = []
    for i in range(k):
        verts += [(3 * i, 0), (3 * i + 1, 0)]
    return g, _rep(verts, [(3 * i + 2, 0) for i in range(k - 1)])


def cycle(n: int):
    """Two rows joined at both ends; the middle row is blocked between them."""
    _need(n >= 7, "cycle fixture needs n >= 7")
    top = (n + 1) // 2
    bottom = n // 2
    # labels run left to right along the top, then right to left along the bottom
    verts = [(x, 2) for x in range(top)] + [(x, 0) for x in reversed(range(bottom))]
    g = Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    return g, _rep(verts, [(x, 1) for x in range(1, top - 1)])


def complete_bipartite(n: int, m: int):
    """K_{n,m} with the larger side on a row and the smaller side split above and below."""
    _need(2 <= n <= m, "complete_bipartite needs 2 <= n <= m")
    big = [(2 * i, 0) for i in range(m)]
    obstacles = [(2 * i + 1, 0) for i in range(m - 1)]
    up = (n + 1) // 2
    down = n - up
    small = [(2 * i + 1, 2) for i in range(up)] + [(2 * i + 1, -2) for i in range(down)]
    obstacles += [(2 * i + 2, 2) for i in range(up - 1)]
    obstacles += [(2 * i + 2, -2) for i in range(down - 1)]
    # labels: small part first, then big part
    g = Graph.from_edges(n + m, [(u, n + v) for u in range(n) for v in range(m)])
    return g, _rep(small + big, obstacles)


def _cmm_layout(n: int, k: int, shared: bool):
    """Blocks along the diagonal, one per matched pair or pair of pairs.

    With ``shared`` two pairs form a plus sign around one common obstacle;
    otherwise every pair gets its own obstacle.
    """
    pos: dict[int, tuple[int, int]] = {}
    obstacles = []
    block = 0
    pairs = [(2 * t, 2 * t + 1) for t in range(k)]
    step = 2 if shared else 1
    for t in range(0, k, step):
        o = 6 * block
        a, b = pairs[t]
        if shared and t + 1 < k:
            c, d = pairs[t + 1]
            pos[a], pos[b] = (o, o + 2), (o + 4, o + 2)
            pos[c], pos[d] = (o + 2, o), (o + 2, o + 4)
        else:
            pos[a], pos[b] = (o + 1, o + 2), (o + 3, o + 2)
        obstacles.append((o + 2, o + 2))
        block += 1
    for v in range(2 * k, n):
        o = 6 * block
        pos[v] = (o + 2, o + 2)
        block += 1
    return [pos[v] for v in range(n)], obstacles


def complete_minus_matching(n: int, k: int):
    from .visibility import verify

    _need(k >= 1 and 2 * k <= n, "complete_minus_matching needs 1 <= k and 2k <= n")
    matched = {(2 * t, 2 * t + 1) for t in range(k)}
    g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in matched])
    for shared in (True, False):
        verts, obstacles = _cmm_layout(n, k, shared)
        rep = _rep(verts, obstacles)
        if verify(rep, g).matches:
            return g, rep
    raise ConstructionError(f"no verified layout for K_{n} minus M_{k}")  # pragma: no cover


def empty_bipartite_complement(n: int, m: int):
    """Complement of K_{n,m}: two cliques on diagonals, split by a blocked column."""
    _need(n >= 1 and m >= 1, "empty_bipartite_complement needs n, m >= 1")
    verts = [(i, i) for i in range(n)] + [(n + 1 + j, j) for j in range(m)]
    wall = [(n, y) for y in range(max(n, m))]
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges += [(n + u, n + v) for u in range(m) for v in range(u + 1, m)]
    return Graph.from_edges(n + m, edges), _rep(verts, wall)


def binary_tree(h: int):
    """Complete binary tree of height h drawn in layers, edges carved as corridors.

    Vertex i (heap order) sits at (2 * in-order rank, 2 * depth).  Each edge
    runs along the parent's row to the child's column and then down to it.
    """
    _need(h >= 1, "binary_tree needs h >= 1")
    n = 2 ** (h + 1) - 1
    rank: dict[int, int] = {}

    def inorder(v: int) -> None:
        if v >= n:
            return
        inorder(2 * v + 1)
        rank[v] = len(rank)
        inorder(2 * v + 2)

    inorder(0)
    depth = [v.bit_length() - 1 for v in range(1, n + 1)]
    pos = [(2 * rank[v], 2 * depth[v]) for v in range(n)]
    free = set()
    edges = []
    for v in range(1, n):
        p = (v - 1) // 2
        edges.append((p, v))
        (px, py), (cx, cy) = pos[p], pos[v]
        step = 1 if cx > px else -1
        free.update((x, py) for x in range(px + step, cx + step, step))
        free.update((cx, y) for y in range(py, cy))
    free.difference_update(pos)
    bounds = ((0, 0), (2 * (n - 1), 2 * h))
    return Graph.from_edges(n, edges), _rep(pos, free, BLOCKED, bounds)


def figure_one():
    """K_4 minus one edge with two isolated point obstacles."""
    g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    return g, _rep([(0, 0), (0, 3), (3, 0), (3, 3)], [(1, 2), (2, 1)])


GENERATORS: dict[str, Callable] = {
    "path": path,
    "cycle": cycle,
    "matching": matching,
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "complete_minus_matching": complete_minus_matching,
    "empty": empty,
    "empty_bipartite_complement": empty_bipartite_complement,
    "binary_tree": binary_tree,
    "figure_one": figure_one,
}


def fixture(cls: str, *params: int) -> tuple[Graph, Representation]:
    """Build a fixture by class name and re-verify it."""
    from .visibility import verify

    key = cls.replace("-", "_")
    if key not in GENERATORS:
        raise GridObsError(f"unknown fixture class {cls!r}; known: {', '.join(sorted(GENERATORS))}")
    try:
        g, rep = GENERATORS[key](*params)
    except TypeError as exc:
        raise GridObsError(f"bad parameters for {cls}: {exc}") from None
    if not verify(rep, g).matches:
        raise ConstructionError(f"fixture {cls}{params} does not verify")
    return g, rep
