"""Walk a small planar graph through the 2D pipeline.

Run with ``python demos/planar_walkthrough.py``.  The script builds a
representation of K4, checks it two independent ways and writes an
SVG next to itself.
"""

from pathlib import Path

import networkx as nx

from gridobs import Graph, embed2d, render_svg, verify
from gridobs.analysis import component_obstacles, crossing_c4_check
from gridobs.planar import audit, straight_line_embed

g = Graph.from_networkx(nx.complete_graph(4))
print(f"K4 on {g.n} vertices, {len(g.edges)} edges")

# Step 1: a straight-line drawing with integer coordinates.
drawing = straight_line_embed(g)
for v, p in enumerate(drawing.positions):
    print(f"  vertex {v} drawn at {p}")

# Step 2: scale it up, thicken the edges into tubes and fill the rest with obstacles.
rep, geo = embed2d(g)
lo, hi = rep.bounds
print(f"scale {geo.scale}, grid {hi[0] - lo[0] + 1} x {hi[1] - lo[1] + 1}, {rep.obstacle_count()} obstacle points")

# Step 3: the visibility graph of the result must be g, and every witness must stay in its tube.
report = verify(rep, g)
print(f"visibility graph matches: {report.matches}")
print(f"witness audit clean: {bool(audit(rep, geo, g))}")

# The obstacle points glue into a handful of connected blobs.
print(f"connected obstacle components: {component_obstacles(rep).count}")
print(f"crossing witnesses splice into edges: {crossing_c4_check(rep, g)}")

out = Path(__file__).with_name("k4.svg")
out.write_text(render_svg(rep, g), encoding="utf-8")
print(f"wrote {out}")
