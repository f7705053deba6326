"""Width compression of representations living in a horizontal strip.

The strip is cut at every vertex column.  Inside each section only the upper
and lower envelopes of the crossing paths are kept, and runs of identical
columns are then merged, which bounds the width by a polynomial in b and n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .grid import BLOCKED, GridObsError, LatticePath, Representation, bend_count
from .visibility import _propagate

# Width constant measured by the test suite: compressed width <= DEFAULT_K * b**3 * n.
DEFAULT_K = 2


@dataclass(frozen=True)
class StripSection:
    """Columns ``left``..``right`` of a strip of height ``b``.

    ``passable[x, y]`` covers the interior columns left+1..right-1 only.
    """

    left: int
    right: int
    b: int
    passable: np.ndarray

    @property
    def interior_width(self) -> int:
        return self.right - self.left - 1


def _check_strip(rep: Representation, b: int) -> None:
    if rep.dim != 2:
        raise GridObsError("strip compression works on 2D representations")
    if b < 1:
        raise GridObsError("strip height must be positive")
    for p in list(rep.vertices) + list(rep.cells):
        if not 0 <= p[1] < b:
            raise GridObsError(f"point {p} lies outside the strip rows 0..{b - 1}")


def _columns(rep: Representation) -> list[int]:
    return sorted({p[0] for p in rep.vertices})


def _passable_block(rep: Representation, x0: int, x1: int, b: int) -> np.ndarray:
    """Passability of columns x0..x1 (inclusive) as an array indexed [x - x0, y]."""
    w = x1 - x0 + 1
    if w <= 0:
        return np.zeros((0, b), dtype=bool)
    if rep.default == BLOCKED:
        arr = np.zeros((w, b), dtype=bool)
        for x, y in rep.cells:
            if x0 <= x <= x1:
                arr[x - x0, y] = True
    else:
        arr = np.ones((w, b), dtype=bool)
        for x, y in rep.cells:
            if x0 <= x <= x1:
                arr[x - x0, y] = False
    for x, y in rep.vertices:
        if x0 <= x <= x1:
            arr[x - x0, y] = False
    return arr


def sections(rep: Representation, b: int) -> list[StripSection]:
    _check_strip(rep, b)
    cols = _columns(rep)
    return [StripSection(l, r, b, _passable_block(rep, l + 1, r - 1, b)) for l, r in zip(cols, cols[1:])]


# ---------------------------------------------------------------------------
# Envelopes
# ---------------------------------------------------------------------------


def _region(p: np.ndarray, i: int, j: int) -> np.ndarray:
    """Points on some monotone rising path from (0, i) to (w-1, j) through p."""
    w, b = p.shape
    # _propagate loops over its first axis, so hand it rows and sweep columns
    pt = np.ascontiguousarray(p.T)
    seed = np.zeros_like(pt)
    seed[i, 0] = True
    fwd = _propagate(pt, seed)
    seed_b = np.zeros_like(pt)
    seed_b[b - 1 - j, 0] = True
    back = _propagate(pt[::-1, ::-1], seed_b)[::-1, ::-1]
    return (fwd & back).T


def _runs(codes: np.ndarray) -> list[tuple[int, int]]:
    if len(codes) == 0:
        return []
    cut = np.flatnonzero(codes[1:] != codes[:-1]) + 1
    starts = np.concatenate(([0], cut))
    ends = np.concatenate((cut, [len(codes)])) - 1
    return list(zip(starts.tolist(), ends.tolist()))


def _walk(r: np.ndarray, i: int, j: int, climb_first: bool) -> list[tuple[int, int]]:
    """Greedy rising walk through region r from (0, i) to (w-1, j).

    climb_first=True prefers the y-step (topmost path); otherwise the x-step.
    Runs of identical columns are crossed in one move.
    """
    w, b = r.shape
    codes = r.astype(np.int64) @ (1 << np.arange(b, dtype=np.int64))
    out = [(0, i)]
    y = i
    for s, e in _runs(codes):
        if s > 0:
            out.append((s, y))
        if climb_first:
            while y + 1 < b and r[s, y + 1]:
                y += 1
                out.append((s, y))
            out.extend((x, y) for x in range(s + 1, e + 1))
        else:
            out.extend((x, y) for x in range(s + 1, e + 1))
            if e == w - 1:
                while y < j:
                    y += 1
                    out.append((e, y))
            else:
                while not r[e + 1, y]:
                    y += 1
                    out.append((e, y))
    return out


def envelopes(section: StripSection, i: int, j: int) -> Optional[tuple[LatticePath, LatticePath]]:
    """Upper and lower envelope of the crossing paths from (left, i) to (right, j).

    Returns None when no passable monotone crossing exists.
    """
    b = section.b
    if not (0 <= i < b and 0 <= j < b):
        raise GridObsError(f"row index out of range 0..{b - 1}: ({i}, {j})")
    l, r = section.left, section.right
    if section.interior_width == 0:
        if i != j:
            return None
        path = ((l, i), (r, j))
        return path, path
    p = section.passable
    falling = j < i
    if falling:
        p = p[:, ::-1]
        i, j = b - 1 - i, b - 1 - j
    reg = _region(p, i, j)
    if not reg[0, i]:
        return None
    hi = _walk(reg, i, j, climb_first=True)
    lo = _walk(reg, i, j, climb_first=False)
    if falling:
        hi, lo = lo, hi
        hi = [(x, b - 1 - y) for x, y in hi]
        lo = [(x, b - 1 - y) for x, y in lo]
        i, j = b - 1 - i, b - 1 - j

    def frame(pts):
        return ((l, i),) + tuple((x + l + 1, y) for x, y in pts) + ((r, j),)

    return frame(hi), frame(lo)


# ---------------------------------------------------------------------------
# Compression
# ---------------------------------------------------------------------------


def _section_envelope_mask(section: StripSection) -> np.ndarray:
    mask = np.zeros_like(section.passable)
    for i in range(section.b):
        for j in range(section.b):
            env = envelopes(section, i, j)
            if env is None:
                continue
            for path in env:
                for x, y in path[1:-1]:
                    mask[x - section.left - 1, y] = True
    return mask


def _assemble(rep: Representation, b: int, cols: list[int], interiors: list[np.ndarray]) -> Representation:
    """Stitch boundary columns of ``rep`` with new interiors into a blocked strip."""
    free: set = set()
    new_x = {}
    x = cols[0]
    for k, c in enumerate(cols):
        new_x[c] = x
        column = _passable_block(rep, c, c, b)[0]
        free.update((x, y) for y in range(b) if column[y])
        if k < len(interiors):
            block = interiors[k]
            for dx, y in zip(*np.nonzero(block)):
                free.add((x + 1 + int(dx), int(y)))
            x += block.shape[0] + 1
    verts = tuple((new_x[vx], vy) for vx, vy in rep.vertices)
    bounds = ((cols[0], 0), (x, b - 1))
    return Representation(2, BLOCKED, verts, frozenset(free), bounds)


def compress_envelopes(strip_rep: Representation, b: int) -> Representation:
    """Keep only envelope points in each section interior; same width."""
    secs = sections(strip_rep, b)
    cols = _columns(strip_rep)
    return _assemble(strip_rep, b, cols, [_section_envelope_mask(s) for s in secs])


def _merge_identical_columns(block: np.ndarray) -> np.ndarray:
    if block.shape[0] <= 1:
        return block
    keep = np.ones(block.shape[0], dtype=bool)
    keep[1:] = np.any(block[1:] != block[:-1], axis=1)
    return block[keep]


def compress_bends(embd_prime: Representation, b: int) -> Representation:
    """Merge each run of identical interior columns into a single column."""
    secs = sections(embd_prime, b)
    cols = _columns(embd_prime)
    return _assemble(embd_prime, b, cols, [_merge_identical_columns(s.passable) for s in secs])


def compress_strip(strip_rep: Representation, b: int, n: Optional[int] = None) -> Representation:
    if n is not None and n != strip_rep.n:
        raise GridObsError(f"n={n} does not match the {strip_rep.n} placed vertices")
    return compress_bends(compress_envelopes(strip_rep, b), b)


def width(rep: Representation) -> int:
    xs = [p[0] for p in rep.vertices]
    return max(xs) - min(xs) + 1 if xs else 0


def envelope_bends(rep: Representation, b: int) -> int:
    """Total bend count over all envelopes of all sections."""
    total = 0
    for s in sections(rep, b):
        for i in range(b):
            for j in range(b):
                env = envelopes(s, i, j)
                if env is not None:
                    total += sum(bend_count(p) for p in env)
    return total


def strip_stats(before: Representation, after: Representation, b: int, k_bound: Optional[float] = None) -> dict:
    n = before.n
    out = {
        "b": b,
        "n": n,
        "width_before": width(before),
        "width_after": width(after),
        "bends_before": envelope_bends(before, b),
        "bends_after": envelope_bends(after, b),
    }
    if k_bound is not None:
        out["k"] = k_bound
        out["within_k_bound"] = out["width_after"] <= k_bound * b**3 * n
    return out
