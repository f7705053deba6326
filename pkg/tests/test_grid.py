import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridobs.grid import (
    DecodeError,
    Graph,
    GridObsError,
    Representation,
    bend_count,
    decode_graph,
    decode_representation,
    encode_graph,
    encode_representation,
    is_manhattan_path,
)

from conftest import rep2


def test_graph_json_k3():
    g = Graph.from_edges(3, [(1, 0), (2, 0), (1, 2)])
    assert encode_graph(g) == b'{"n":3,"edges":[[0,1],[0,2],[1,2]]}'


def test_graph_json_empty():
    assert encode_graph(Graph(4)) == b'{"n":4,"edges":[]}'


@pytest.mark.parametrize(
    "payload, message",
    [
        ('{"n":2,"edges":[[0,0]]}', "self-loop"),
        ('{"n":2,"edges":[[0,2]]}', "out of range"),
        ('{"n":3,"edges":[[0,1],[1,0]]}', "duplicate"),
    ],
)
def test_graph_decode_rejects(payload, message):
    with pytest.raises(DecodeError, match=message):
        decode_graph(payload)


def test_representation_roundtrip_byte_identical():
    rep = rep2([(0, 0), (1, 0)])
    data = encode_representation(rep)
    again = decode_representation(data)
    assert again == rep
    assert encode_representation(again) == data


def test_decode_rejects_cell_on_vertex():
    payload = json.dumps({"dim": 2, "default": "free", "vertices": [[0, 0], [2, 0]], "cells": [[2, 0]]})
    with pytest.raises(DecodeError, match="cell collides with vertex"):
        decode_representation(payload)


def test_decode_rejects_bad_dimension_and_missing_bounds():
    with pytest.raises(DecodeError):
        decode_representation('{"dim":4,"default":"free","vertices":[],"cells":[]}')
    with pytest.raises(DecodeError, match="bounds"):
        decode_representation('{"dim":2,"default":"blocked","vertices":[[0,0]],"cells":[]}')


def test_empty_graph_fixture_entry_counts():
    from gridobs.fixtures import fixture

    _, rep = fixture("empty", 7)
    obj = json.loads(encode_representation(rep))
    assert len(obj["vertices"]) == 7
    assert len(obj["cells"]) == 6


def test_invariants_enforced():
    with pytest.raises(GridObsError):
        rep2([(0, 0), (0, 0)])
    with pytest.raises(GridObsError):
        rep2([(0, 0)], [(5, 5)], default="blocked", bounds=((0, 0), (2, 2)))


def test_obstacle_count_blocked():
    rep = rep2([(0, 0), (2, 0)], [(1, 0)], default="blocked", bounds=((0, 0), (2, 1)))
    # 6 points, 2 vertices, 1 free cell
    assert rep.obstacle_count() == 3
    assert sorted(rep.obstacles()) == [(0, 1), (1, 1), (2, 1)]


def test_transpose_swaps_axes():
    rep = rep2([(0, 0), (3, 1)], [(1, 0)])
    t = rep.transpose()
    assert t.vertices == ((0, 0), (1, 3))
    assert t.cells == frozenset({(0, 1)})


def test_path_helpers():
    assert is_manhattan_path([(0, 0), (1, 0), (1, 1)])
    assert not is_manhattan_path([(0, 0), (1, 0), (0, 0)])
    assert bend_count([(0, 0), (1, 0), (1, 1), (2, 1)]) == 2


coords = st.tuples(st.integers(-20, 20), st.integers(-20, 20))


@st.composite
def representations(draw):
    verts = draw(st.lists(coords, min_size=0, max_size=6, unique=True))
    cells = draw(st.sets(coords, max_size=10))
    cells -= set(verts)
    if draw(st.booleans()):
        return Representation(2, "free", tuple(verts), frozenset(cells))
    pts = verts + list(cells) or [(0, 0)]
    lo = (min(p[0] for p in pts) - 1, min(p[1] for p in pts) - 1)
    hi = (max(p[0] for p in pts) + 1, max(p[1] for p in pts) + 1)
    return Representation(2, "blocked", tuple(verts), frozenset(cells), (lo, hi))


@settings(max_examples=200, deadline=None)
@given(representations())
def test_encode_decode_identity(rep):
    data = encode_representation(rep)
    assert decode_representation(data) == rep
    assert encode_representation(decode_representation(data)) == data


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 7).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0)))))))
def test_graph_roundtrip(args):
    n, pairs = args
    edges = {(min(u, v), max(u, v)) for u, v in pairs if u != v and n > 0}
    g = Graph.from_edges(n, sorted(edges))
    assert decode_graph(encode_graph(g)) == g
