"""Exact geometric predicates on rational points in the plane and in space.

Everything works on tuples of ``int`` or ``Fraction``; distances are returned
squared so no radicals ever appear.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

Num = int | Fraction
Vec = tuple[Num, ...]


def sub(a: Sequence[Num], b: Sequence[Num]) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def dot(a: Sequence[Num], b: Sequence[Num]) -> Num:
    return sum(x * y for x, y in zip(a, b))


def norm2(a: Sequence[Num]) -> Num:
    return dot(a, a)


def cross2(a: Sequence[Num], b: Sequence[Num]) -> Num:
    return a[0] * b[1] - a[1] * b[0]


def cross3(a: Sequence[Num], b: Sequence[Num]) -> Vec:
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def orient(a: Sequence[Num], b: Sequence[Num], c: Sequence[Num]) -> Num:
    """Twice the signed area of triangle abc."""
    return cross2(sub(b, a), sub(c, a))


def _lerp(a: Sequence[Num], b: Sequence[Num], t: Num) -> Vec:
    return tuple(x + t * (y - x) for x, y in zip(a, b))


def point_segment_dist2(p: Sequence[Num], a: Sequence[Num], b: Sequence[Num]) -> Fraction:
    ab = sub(b, a)
    den = norm2(ab)
    if den == 0:
        return Fraction(norm2(sub(p, a)))
    t = Fraction(dot(sub(p, a), ab), den)
    t = min(max(t, Fraction(0)), Fraction(1))
    return Fraction(norm2(sub(p, _lerp(a, b, t))))


def point_line_dist2(p: Sequence[Num], a: Sequence[Num], b: Sequence[Num]) -> Fraction:
    ab = sub(b, a)
    ap = sub(p, a)
    t = Fraction(dot(ap, ab), norm2(ab))
    return Fraction(norm2(sub(p, _lerp(a, b, t))))


def on_segment(p: Sequence[Num], a: Sequence[Num], b: Sequence[Num]) -> bool:
    return point_segment_dist2(p, a, b) == 0


def segments_intersect(a: Sequence[Num], b: Sequence[Num], c: Sequence[Num], d: Sequence[Num]) -> bool:
    """Closed segments ab and cd share at least one point (any dimension)."""
    return segment_segment_dist2(a, b, c, d) == 0


def segment_segment_dist2(a: Sequence[Num], b: Sequence[Num], c: Sequence[Num], d: Sequence[Num]) -> Fraction:
    """Exact squared distance between closed segments ab and cd.

    The squared distance is a convex quadratic over the parameter square, so
    its minimum is either the interior critical point or lies on the square's
    border, which is an endpoint-to-segment distance.
    """
    cands = [
        point_segment_dist2(a, c, d),
        point_segment_dist2(b, c, d),
        point_segment_dist2(c, a, b),
        point_segment_dist2(d, a, b),
    ]
    u = sub(b, a)
    v = sub(d, c)
    w = sub(a, c)
    uu, uv, vv = norm2(u), dot(u, v), norm2(v)
    det = uu * vv - uv * uv
    if det != 0:
        uw, vw = dot(u, w), dot(v, w)
        s = Fraction(uv * vw - vv * uw, det)
        t = Fraction(uu * vw - uv * uw, det)
        if 0 <= s <= 1 and 0 <= t <= 1:
            cands.append(Fraction(norm2(sub(_lerp(a, b, s), _lerp(c, d, t)))))
    return min(cands)


def sin2_between(a: Sequence[Num], b: Sequence[Num]) -> Fraction:
    """sin² of the angle between two nonzero vectors."""
    if len(a) == 2:
        num = cross2(a, b) ** 2
    else:
        num = norm2(cross3(a, b))
    return Fraction(num, norm2(a) * norm2(b))


def drawing_is_planar(pos: dict, edges: Iterable[tuple[int, int]]) -> bool:
    """No two segments meet outside shared endpoints, no vertex inside a segment.

    Works for 3D drawings too, where "planar" reads as crossing-free.
    """
    edges = list(edges)
    for v, p in pos.items():
        for a, b in edges:
            if v not in (a, b) and on_segment(p, pos[a], pos[b]):
                return False
    for (a, b), (c, d) in combinations(edges, 2):
        shared = {a, b} & {c, d}
        if not shared:
            if segments_intersect(pos[a], pos[b], pos[c], pos[d]):
                return False
            continue
        s = shared.pop()
        o1 = b if a == s else a
        o2 = d if c == s else c
        u = sub(pos[o1], pos[s])
        w = sub(pos[o2], pos[s])
        # two edges at a common endpoint overlap iff they point the same way
        if sin2_between(u, w) == 0 and dot(u, w) > 0:
            return False
    return True


def sqrt_below(x: Fraction, bits: int = 24) -> Fraction:
    """A dyadic rational r with 0 < r and r² < x, within 2^-bits of sqrt(x)."""
    from math import isqrt

    if x <= 0:
        raise ValueError("sqrt_below needs a positive argument")
    scale = 1 << bits
    r = Fraction(isqrt(x.numerator * scale * scale // x.denominator), scale)
    while r * r >= x:
        r -= Fraction(1, scale)
    if r <= 0:
        return sqrt_below(x, bits + 16)
    return r
