"""Shrink a wide strip representation without changing what sees what.

A strip is a representation whose points all sit in rows ``0..b-1``.  Long
stretches between vertex columns carry little information, and compression
squeezes them down to a width that depends on the bends of the witness paths
rather than on the original spacing.
"""

import random

from gridobs import Representation, visibility_graph
from gridobs.strip import compress_strip, strip_stats

rng = random.Random(3)
b = 3
xs = [0, 400, 1300, 2900, 5000]
vertices = tuple((x, rng.randrange(b)) for x in xs)
obstacles = set()
while len(obstacles) < 12:
    q = (rng.randrange(5001), rng.randrange(b))
    if q not in vertices:
        obstacles.add(q)
rep = Representation(2, "free", vertices, frozenset(obstacles))

before = visibility_graph(rep)
print(f"{rep.n} vertices over width 5001, height {b}; edges {before.sorted_edges()}")

small = compress_strip(rep, b)
after = visibility_graph(small)
print(f"after compression: same visibility graph = {after == before}")
for key, value in sorted(strip_stats(rep, small, b).items()):
    print(f"  {key}: {value}")
