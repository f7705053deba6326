import pytest

from gridobs.grid import ConstructionError, Graph, GridObsError, l1
from gridobs.reduction import (
    NO,
    UNKNOWN,
    YES,
    GeodesicDrawing,
    geodesic_to_rep,
    gpse_points,
    oeps_decide,
    oeps_points,
    oeps_search,
    stretch_path,
)
from gridobs.visibility import verify


def test_point_set_example_n4():
    inst = gpse_points(4, 2, 1)
    assert inst.p0 == tuple((-j, 0) for j in range(7))
    assert inst.p1 == ((1, 4), (2, 8))
    assert inst.p2 == ((1, -4),)
    o = oeps_points(4, 2, 1)
    assert o.p1 == ((2, 8), (4, 16)) and o.p2 == ((2, -8),)
    assert o.p0 == inst.p0


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_point_set_invariants(n):
    for k1 in range(n // 2 + 2):
        k2 = n // 2 + 1 - k1
        for make, s in ((gpse_points, 1), (oeps_points, 2)):
            inst = make(n, k1, k2)
            assert len(inst.p0) == 2 * n - 1
            assert len(inst.points) == 5 * n // 2
            assert len(set(inst.points)) == len(inst.points)
            assert inst.p1 == tuple((s * j, s * n * j) for j in range(1, k1 + 1))
            assert inst.p2 == tuple((s * j, -s * n * j) for j in range(1, k2 + 1))


@pytest.mark.parametrize("n, k1, k2", [(5, 2, 1), (2, 1, 1), (4, 2, 2), (4, -1, 4)])
def test_point_set_rejects(n, k1, k2):
    with pytest.raises(GridObsError):
        gpse_points(n, k1, k2)


def _straight(a, b):
    (x0, y0), (x1, y1) = a, b
    if y0 == y1:
        s = 1 if x1 > x0 else -1
        return tuple((x, y0) for x in range(x0, x1 + s, s))
    s = 1 if y1 > y0 else -1
    return tuple((x0, y) for y in range(y0, y1 + s, s))


GEODESIC_CORPUS = {
    "collinear-path": GeodesicDrawing(
        ((0, 0), (1, 0), (2, 0)), {(0, 1): ((0, 0), (1, 0)), (1, 2): ((1, 0), (2, 0))}
    ),
    "l-junction": GeodesicDrawing(
        ((-2, 0), (0, 0), (0, 2)),
        {(0, 1): _straight((-2, 0), (0, 0)), (1, 2): _straight((0, 0), (0, 2))},
    ),
    "square": GeodesicDrawing(
        ((0, 0), (2, 0), (2, 2), (0, 2)),
        {
            (0, 1): _straight((0, 0), (2, 0)),
            (1, 2): _straight((2, 0), (2, 2)),
            (2, 3): _straight((0, 2), (2, 2))[::-1],
            (0, 3): _straight((0, 0), (0, 2)),
        },
    ),
    "star-across-axis": GeodesicDrawing(
        ((0, 0), (-3, 1), (2, 1), (1, -2), (-1, -3)),
        {
            (0, 1): ((0, 0), (-1, 0), (-2, 0), (-3, 0), (-3, 1)),
            (0, 2): ((0, 0), (0, 1), (1, 1), (2, 1)),
            (0, 3): ((0, 0), (1, 0), (1, -1), (1, -2)),
            (0, 4): ((0, 0), (0, -1), (0, -2), (0, -3), (-1, -3)),
        },
    ),
    "triangle-around": GeodesicDrawing(
        ((-2, 0), (1, 0), (1, 2)),
        {
            (0, 1): _straight((-2, 0), (1, 0)),
            (1, 2): _straight((1, 0), (1, 2)),
            (0, 2): ((-2, 0), (-2, 1), (-2, 2), (-1, 2), (0, 2), (1, 2)),
        },
    ),
}


@pytest.mark.parametrize("name", sorted(GEODESIC_CORPUS))
def test_geodesic_round_trip(name):
    d = GEODESIC_CORPUS[name]
    rep = geodesic_to_rep(d)
    assert verify(rep, d.graph()).matches
    for (u, v), path in d.paths.items():
        s = stretch_path(path)
        assert len(s) - 1 == l1(s[0], s[-1])
    assert verify(geodesic_to_rep(d, uniform=True), d.graph()).matches


def test_geodesic_keeps_negative_columns():
    rep = geodesic_to_rep(GEODESIC_CORPUS["l-junction"])
    assert rep.vertices == ((-2, 0), (0, 0), (0, 4))


def test_geodesic_adjacent_columns_on_the_left():
    # parallel paths one column apart at x < 0 stay adjacent after the stretch
    d = GeodesicDrawing(
        ((-2, 0), (-2, 3), (-1, 1), (-1, 4)),
        {(0, 1): _straight((-2, 0), (-2, 3)), (2, 3): _straight((-1, 1), (-1, 4))},
    )
    with pytest.raises(ConstructionError, match="uniform"):
        geodesic_to_rep(d)
    assert verify(geodesic_to_rep(d, uniform=True), d.graph()).matches


@pytest.mark.parametrize(
    "d",
    [
        GeodesicDrawing(((0, 0), (2, 1)), {(0, 1): ((0, 0), (1, 0), (1, 1), (1, 0), (2, 0), (2, 1))}),
        GeodesicDrawing(
            ((0, 0), (2, 2), (0, 2), (2, 0)),
            {(0, 1): ((0, 0), (1, 0), (1, 1), (1, 2), (2, 2)), (2, 3): ((0, 2), (0, 1), (1, 1), (2, 1), (2, 0))},
        ),
        GeodesicDrawing(((0, 0), (2, 0), (1, 0)), {(0, 1): ((0, 0), (1, 0), (2, 0))}),
    ],
    ids=["non-manhattan", "crossing", "through-vertex"],
)
def test_geodesic_rejects(d):
    with pytest.raises(GridObsError):
        geodesic_to_rep(d)


def test_oeps_examples():
    assert oeps_decide(Graph.from_edges(2, [(0, 1)]), [(0, 0), (3, 5)]) == YES
    assert oeps_decide(Graph(2), [(0, 0), (1, 0)]) == NO
    assert oeps_decide(Graph.from_edges(3, [(0, 1), (1, 2)]), [(0, 0), (1, 0), (2, 0)]) == YES


def test_oeps_witness_verifies():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    res = oeps_search(g, [(0, 0), (2, 0), (2, 2), (0, 2)])
    assert res.answer == YES
    assert verify(res.representation, g).matches
    assert set(res.representation.vertices) == {(0, 0), (2, 0), (2, 2), (0, 2)}


def test_oeps_no_and_unknown():
    # three collinear points: the outer pair always has the middle vertex between them
    k3 = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert oeps_decide(k3, [(0, 0), (1, 0), (2, 0)]) == NO
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert oeps_decide(g, [(0, 0), (6, 6), (0, 6), (6, 0)], node_cap=1) == UNKNOWN


def test_oeps_input_errors():
    with pytest.raises(GridObsError):
        oeps_decide(Graph(2), [(0, 0)])
    with pytest.raises(GridObsError):
        oeps_decide(Graph(2), [(0, 0), (0, 0)])
    with pytest.raises(GridObsError):
        oeps_decide(Graph(2), [(0, 0), (30, 30)])
    with pytest.raises(GridObsError):
        oeps_decide(Graph(7), [(i, 0) for i in range(7)])
