import itertools
import random

import pytest

from gridobs.grid import Representation


def rep2(vertices, obstacles=(), default="free", bounds=None):
    return Representation(2, default, tuple(map(tuple, vertices)), frozenset(map(tuple, obstacles)), bounds)


def random_config(rng: random.Random, dim: int, max_side: int, extra_vertices: int = 3):
    """Random endpoints, blocking vertices and obstacles inside a small box."""
    side = [rng.randint(1, max_side) for _ in range(dim)]
    if all(s == 1 for s in side):
        side[rng.randrange(dim)] = 2
    pts = [tuple(rng.randrange(s) for s in side) for _ in range(2)]
    while pts[0] == pts[1]:
        pts[1] = tuple(rng.randrange(s) for s in side)
    density = rng.uniform(0.0, 0.6)
    verts = list(pts)
    for _ in range(rng.randint(0, extra_vertices)):
        q = tuple(rng.randrange(s) for s in side)
        if q not in verts:
            verts.append(q)
    obstacles = [
        q
        for q in itertools.product(*(range(s) for s in side))
        if q not in verts and rng.random() < density
    ]
    return Representation(dim, "free", tuple(verts), frozenset(obstacles))


@pytest.fixture
def rng():
    return random.Random(1234)
