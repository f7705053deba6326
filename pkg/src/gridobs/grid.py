"""Lattice data model: graphs, obstacle representations and their JSON encoding."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

Point = tuple[int, ...]
LatticePath = tuple[Point, ...]

FREE = "free"
BLOCKED = "blocked"


class GridObsError(ValueError):
    """Base class for domain errors raised by this package."""


class DecodeError(GridObsError):
    pass


class ConstructionError(GridObsError):
    """An embedding pipeline produced something it should not have."""


# ---------------------------------------------------------------------------
# Graph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GridObsError("vertex count must be non-negative")
        for u, v in self.edges:
            if u == v:
                raise GridObsError("self-loop")
            if not (0 <= u < v < self.n):
                raise GridObsError(f"edge ({u}, {v}) is not normalized or out of range")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        seen: set[tuple[int, int]] = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GridObsError("self-loop")
            if not (0 <= u < n and 0 <= v < n):
                raise GridObsError(f"label out of range in edge ({u}, {v})")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GridObsError(f"duplicate edge {key}")
            seen.add(key)
        return cls(n, frozenset(seen))

    @classmethod
    def from_networkx(cls, g) -> "Graph":
        nodes = sorted(g.nodes())
        if nodes != list(range(len(nodes))):
            raise GridObsError("networkx graph must be labelled 0..n-1")
        return cls.from_edges(len(nodes), g.edges())

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def non_edges(self) -> list[tuple[int, int]]:
        return [
            (u, v) for u in range(self.n) for v in range(u + 1, self.n) if (u, v) not in self.edges
        ]


# ---------------------------------------------------------------------------
# Representation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Representation:
    """Vertex placement plus point obstacles on Z^2 or Z^3.

    ``cells`` lists the exceptions to ``default``: obstacles when the default is
    free, free points when the default is blocked.  Vertex positions are never
    obstacles and never appear in ``cells``.
    """

    dim: int
    default: str
    vertices: tuple[Point, ...]
    cells: frozenset[Point] = frozenset()
    bounds: Optional[tuple[Point, Point]] = None
    _skip_check: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self._skip_check:
            self.validate()

    def validate(self) -> None:
        if self.dim not in (2, 3):
            raise GridObsError(f"dimension must be 2 or 3, got {self.dim}")
        if self.default not in (FREE, BLOCKED):
            raise GridObsError(f"default must be 'free' or 'blocked', got {self.default!r}")
        for p in self.vertices:
            if len(p) != self.dim:
                raise GridObsError(f"vertex {p} has wrong dimension")
        if len(set(self.vertices)) != len(self.vertices):
            raise GridObsError("vertex positions are not distinct")
        vset = self.vertex_index
        for c in self.cells:
            if len(c) != self.dim:
                raise GridObsError(f"cell {c} has wrong dimension")
            if c in vset:
                raise GridObsError(f"cell collides with vertex at {c}")
        if self.default == BLOCKED and self.bounds is None:
            raise GridObsError("default=blocked requires bounds")
        if self.bounds is not None:
            lo, hi = self.bounds
            if len(lo) != self.dim or len(hi) != self.dim:
                raise GridObsError("bounds have wrong dimension")
            if any(a > b for a, b in zip(lo, hi)):
                raise GridObsError("bounds are inverted")
            if self.default == BLOCKED:
                for p in list(self.vertices) + list(self.cells):
                    if not self.in_bounds(p):
                        raise GridObsError(f"point {p} lies outside bounds")

    # -- queries -----------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def vertex_index(self) -> dict[Point, int]:
        return {p: i for i, p in enumerate(self.vertices)}

    def in_bounds(self, p: Point) -> bool:
        if self.bounds is None:
            return True
        lo, hi = self.bounds
        return all(a <= x <= b for a, x, b in zip(lo, p, hi))

    def is_obstacle(self, p: Point) -> bool:
        if p in self.vertex_index:
            return False
        if self.default == FREE:
            return p in self.cells
        return p not in self.cells

    def is_passable(self, p: Point) -> bool:
        """True for points that are neither obstacles nor vertices."""
        if p in self.vertex_index:
            return False
        if self.default == FREE:
            return p not in self.cells
        return p in self.cells

    def obstacle_count(self) -> int:
        if self.default == FREE:
            return len(self.cells)
        return self.volume() - len(self.cells) - self.n

    def volume(self) -> int:
        if self.bounds is None:
            raise GridObsError("unbounded representation has no volume")
        lo, hi = self.bounds
        v = 1
        for a, b in zip(lo, hi):
            v *= b - a + 1
        return v

    def obstacles(self) -> Iterator[Point]:
        """Iterate obstacle points (enumerates the bounds when default=blocked)."""
        if self.default == FREE:
            yield from sorted(self.cells)
            return
        lo, hi = self.bounds  # type: ignore[misc]
        import itertools

        for p in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
            if p not in self.cells and p not in self.vertex_index:
                yield p

    def extent(self) -> tuple[Point, Point]:
        """Bounds if present, else the bounding box of vertices and cells."""
        if self.bounds is not None:
            return self.bounds
        pts = list(self.vertices) + list(self.cells)
        if not pts:
            z = (0,) * self.dim
            return z, z
        lo = tuple(min(p[k] for p in pts) for k in range(self.dim))
        hi = tuple(max(p[k] for p in pts) for k in range(self.dim))
        return lo, hi

    def transpose(self, axes: Sequence[int] | None = None) -> "Representation":
        """Permute coordinate axes (default: swap x and y)."""
        if axes is None:
            axes = (1, 0) if self.dim == 2 else (1, 0, 2)
        axes = tuple(axes)
        if sorted(axes) != list(range(self.dim)):
            raise GridObsError(f"invalid axis permutation {axes}")

        def perm(p: Point) -> Point:
            return tuple(p[a] for a in axes)

        bounds = None
        if self.bounds is not None:
            bounds = (perm(self.bounds[0]), perm(self.bounds[1]))
        return Representation(
            self.dim,
            self.default,
            tuple(perm(p) for p in self.vertices),
            frozenset(perm(c) for c in self.cells),
            bounds,
        )

    def with_obstacles(self, extra: Iterable[Point]) -> "Representation":
        """Return a copy with additional obstacle points."""
        extra = set(extra)
        if self.default == FREE:
            cells = self.cells | extra
        else:
            cells = self.cells - extra
        return Representation(self.dim, self.default, self.vertices, frozenset(cells), self.bounds)


# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------


def l1(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(abs(x - y) for x, y in zip(a, b))


def is_manhattan_path(points: Sequence[Point]) -> bool:
    """Unit steps, and total length equal to the l1 distance of the endpoints."""
    if not points:
        return False
    for p, q in zip(points, points[1:]):
        if l1(p, q) != 1:
            return False
    return len(points) - 1 == l1(points[0], points[-1])


def bend_count(points: Sequence[Point]) -> int:
    """Number of interior points where a lattice path changes direction."""
    bends = 0
    prev = None
    for p, q in zip(points, points[1:]):
        d = tuple(b - a for a, b in zip(p, q))
        if prev is not None and d != prev:
            bends += 1
        prev = d
    return bends


def box_points(a: Point, b: Point) -> Iterator[Point]:
    import itertools

    return itertools.product(*(range(min(x, y), max(x, y) + 1) for x, y in zip(a, b)))


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def _dumps(obj) -> bytes:
    return json.dumps(obj, separators=(",", ":")).encode("utf-8")


def _point(raw, dim: int) -> Point:
    if not isinstance(raw, list) or len(raw) != dim or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in raw
    ):
        raise DecodeError(f"bad coordinate {raw!r} for dimension {dim}")
    return tuple(raw)


def encode_graph(g: Graph) -> bytes:
    return _dumps({"n": g.n, "edges": [list(e) for e in g.sorted_edges()]})


def decode_graph(data: bytes | str) -> Graph:
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise DecodeError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise DecodeError("graph JSON needs 'n' and 'edges'")
    n = obj["n"]
    if not isinstance(n, int) or n < 0:
        raise DecodeError("'n' must be a non-negative integer")
    edges = []
    for e in obj["edges"]:
        if not isinstance(e, list) or len(e) != 2 or not all(isinstance(x, int) for x in e):
            raise DecodeError(f"bad edge {e!r}")
        edges.append(e)
    try:
        return Graph.from_edges(n, edges)
    except GridObsError as exc:
        raise DecodeError(str(exc)) from exc


def representation_to_obj(rep: Representation) -> dict:
    obj: dict = {"dim": rep.dim, "default": rep.default}
    if rep.bounds is not None:
        obj["bounds"] = [list(rep.bounds[0]), list(rep.bounds[1])]
    obj["vertices"] = [list(p) for p in rep.vertices]
    obj["cells"] = [list(c) for c in sorted(rep.cells)]
    return obj


def encode_representation(rep: Representation) -> bytes:
    return _dumps(representation_to_obj(rep))


def decode_representation(data: bytes | str) -> Representation:
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise DecodeError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise DecodeError("representation JSON must be an object")
    dim = obj.get("dim")
    if dim not in (2, 3):
        raise DecodeError(f"dimension must be 2 or 3, got {dim!r}")
    default = obj.get("default", FREE)
    bounds = None
    if obj.get("bounds") is not None:
        raw = obj["bounds"]
        if not isinstance(raw, list) or len(raw) != 2:
            raise DecodeError("bounds must be [[lo...],[hi...]]")
        bounds = (_point(raw[0], dim), _point(raw[1], dim))
    vertices = tuple(_point(p, dim) for p in obj.get("vertices", []))
    cells = [_point(c, dim) for c in obj.get("cells", [])]
    if len(set(cells)) != len(cells):
        raise DecodeError("duplicate cell entries")
    try:
        return Representation(dim, default, vertices, frozenset(cells), bounds)
    except GridObsError as exc:
        raise DecodeError(str(exc)) from exc


def read_graph(path) -> Graph:
    with open(path, "rb") as fh:
        return decode_graph(fh.read())


def write_graph(path, g: Graph) -> None:
    with open(path, "wb") as fh:
        fh.write(encode_graph(g))


def read_representation(path) -> Representation:
    with open(path, "rb") as fh:
        return decode_representation(fh.read())


def write_representation(path, rep: Representation) -> None:
    with open(path, "wb") as fh:
        fh.write(encode_representation(rep))
