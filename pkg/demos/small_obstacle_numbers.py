"""Exact obstacle numbers of tiny graphs, and the point sets of the hardness gadget.

The exhaustive search is only practical on windows up to 7 x 7.  Its answer is
the fewest obstacles that work inside that window, which can only be larger
than the true obstacle number.
"""

import time

from gridobs import Graph
from gridobs.analysis import obsnum_search
from gridobs.reduction import YES, gpse_points, oeps_decide, oeps_points

cases = [
    ("path on 3", Graph.from_edges(3, [(0, 1), (1, 2)]), 5),
    ("triangle", Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]), 5),
    ("3 isolated vertices", Graph(3), 5),
    ("4 isolated vertices", Graph(4), 7),
]
for name, g, side in cases:
    t = time.perf_counter()
    res = obsnum_search(g, side, side, 4)
    print(f"{name:>20}: {res.value} obstacles in a {side}x{side} window ({time.perf_counter() - t:.1f}s)")

# The reduction places a long row of points on the negative x-axis plus two steep rays.
inst = gpse_points(4, 2, 1)
print(f"point-set instance n=4: p0={inst.p0}, p1={inst.p1}, p2={inst.p2}")
print(f"the spaced-out variant doubles the rays: p1={oeps_points(4, 2, 1).p1}")

# A 4-cycle fits on the corners of a square; its witness paths run along the sides.
c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
answer = oeps_decide(c4, [(0, 0), (2, 0), (2, 2), (0, 2)])
print(f"4-cycle on the corners of a 2x2 square: {answer}{' (a witness was found)' if answer == YES else ''}")
