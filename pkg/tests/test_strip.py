import random

import numpy as np
import pytest

from gridobs.grid import GridObsError, Representation, bend_count
from gridobs.strip import (
    DEFAULT_K,
    StripSection,
    compress_bends,
    compress_envelopes,
    compress_strip,
    envelopes,
    sections,
    strip_stats,
    width,
)
from gridobs.visibility import visibility_graph

from conftest import rep2


def random_strip(rng: random.Random, max_width: int = 10**4) -> tuple[Representation, int]:
    b = rng.randint(1, 4)
    n = rng.randint(2, 6)
    w = max(n, round(10 ** rng.uniform(0.5, np.log10(max_width))))
    xs = sorted(rng.sample(range(w), n))
    verts = [(x, rng.randrange(b)) for x in xs]
    k = rng.randint(0, min(w * b // 3, w * b - n, 300))
    obstacles = set()
    while len(obstacles) < k:
        q = (rng.randrange(w), rng.randrange(b))
        if q not in verts:
            obstacles.add(q)
    return rep2(verts, obstacles), b


def _enumerated_envelopes(section: StripSection, i: int, j: int):
    """Pointwise extremes over every passable crossing path (step-index alignment)."""
    l, r, b = section.left, section.right, section.b
    p = section.passable
    w = r - l - 1
    sy = 1 if j >= i else -1
    paths = []

    def rec(x, y, acc):
        if x == w - 1 and y == j:
            paths.append(list(acc))
            return
        for nx_, ny in ((x + 1, y), (x, y + sy)):
            if nx_ < w and 0 <= ny < b and (ny - j) * sy <= 0 and p[nx_, ny]:
                acc.append((nx_, ny))
                rec(nx_, ny, acc)
                acc.pop()

    if p[0, i]:
        rec(0, i, [(0, i)])
    if not paths:
        return None
    steps = len(paths[0])
    hi = [max(pth[t][1] for pth in paths) for t in range(steps)]
    lo = [min(pth[t][1] for pth in paths) for t in range(steps)]

    def rebuild(ys):
        # the x-coordinate at step t is fixed by t and the row
        return [(l, i)] + [(l + 1 + t - abs(y - i), y) for t, y in enumerate(ys)] + [(r, j)]

    return rebuild(hi), rebuild(lo)


def test_envelopes_match_enumeration():
    rng = random.Random(7)
    nonempty = 0
    for _ in range(300):
        b = rng.randint(1, 4)
        w = rng.randint(1, 12 - b)
        dens = rng.uniform(0, 0.5)
        passable = np.array([[rng.random() > dens for _ in range(b)] for _ in range(w)], dtype=bool)
        sec = StripSection(0, w + 1, b, passable)
        i, j = rng.randrange(b), rng.randrange(b)
        got = envelopes(sec, i, j)
        want = _enumerated_envelopes(sec, i, j)
        if want is None:
            assert got is None
        else:
            assert got is not None
            hi, lo = got
            assert list(hi) == want[0] and list(lo) == want[1]
            nonempty += 1
    assert nonempty >= 100


def test_envelope_without_interior():
    sec = StripSection(3, 4, 3, np.zeros((0, 3), dtype=bool))
    assert envelopes(sec, 1, 1) == (((3, 1), (4, 1)), ((3, 1), (4, 1)))
    assert envelopes(sec, 0, 2) is None
    with pytest.raises(GridObsError):
        envelopes(sec, 0, 3)


def test_sections_cut_at_vertex_columns():
    rep = rep2([(0, 0), (5, 1), (9, 0)], [(2, 0)])
    secs = sections(rep, 2)
    assert [(s.left, s.right) for s in secs] == [(0, 5), (5, 9)]
    assert secs[0].passable.shape == (4, 2)
    assert not secs[0].passable[1, 0]
    with pytest.raises(GridObsError, match="outside the strip"):
        sections(rep2([(0, 0), (1, 3)]), 2)


def test_compress_bends_merges_identical_columns():
    rep = rep2([(0, 0), (50, 0)])
    out = compress_bends(rep, 1)
    assert width(out) == 3
    assert visibility_graph(out) == visibility_graph(rep)


def test_compress_strip_checks_n():
    rep = rep2([(0, 0), (5, 0)])
    with pytest.raises(GridObsError):
        compress_strip(rep, 1, n=3)


def test_random_strips_preserve_visibility_and_bends():
    rng = random.Random(2024)
    for _ in range(40):
        rep, b = random_strip(rng, max_width=300)
        env = compress_envelopes(rep, b)
        out = compress_strip(rep, b)
        vg = visibility_graph(rep)
        assert visibility_graph(env) == vg
        assert visibility_graph(out) == vg
        stats = strip_stats(rep, out, b, DEFAULT_K)
        assert stats["bends_after"] == stats["bends_before"]
        assert stats["within_k_bound"]


def test_bend_count_examples():
    assert bend_count([(0, 0), (1, 0), (2, 0)]) == 0
    assert bend_count([(0, 0), (1, 0), (1, 1), (2, 1)]) == 2
