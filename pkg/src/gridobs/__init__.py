"""Grid (l1) obstacle representations of graphs on Z^2 and Z^3."""

from .analysis import ComponentDecomposition, component_obstacles, crossing_c4_check, has_c4, obsnum_exact
from .construction import ConstructionGeometry, gbg_audit
from .embed3d import embed3d, faithful_dimensions, straight_line_embed_3d
from .fixtures import fixture
from .grid import (
    BLOCKED,
    FREE,
    ConstructionError,
    DecodeError,
    Graph,
    GridObsError,
    Representation,
    decode_graph,
    decode_representation,
    encode_graph,
    encode_representation,
)
from .planar import ADAPTIVE, PAPER_FAITHFUL, embed2d, straight_line_embed
from .reduction import PointSetInstance, geodesic_to_rep, gpse_points, oeps_decide, oeps_points
from .render import render_svg
from .strip import compress_bends, compress_envelopes, compress_strip, envelopes
from .visibility import (
    VerificationReport,
    brute_force_visible,
    is_visible,
    verify,
    visibility_graph,
    witness_path,
)

__version__ = "0.1.0"
