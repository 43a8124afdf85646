"""Terrain model, viewpoint sets, and general-position validation."""

import pytest
from gmpy2 import mpq

from terravis import (FIX_APEX, FIX_FLAT, FIX_PEAK, FIX_VALLEY, Terrain,
                      ViewpointSet, point_at, validate)


def test_terrain_requires_strictly_increasing_x():
    with pytest.raises(ValueError):
        Terrain([(0, 0), (0, 1)])
    with pytest.raises(ValueError):
        Terrain([(0, 0), (2, 1), (1, 0)])
    with pytest.raises(ValueError):
        Terrain([(0, 0)])


def test_y_at_interpolates_exactly():
    t = Terrain([(0, 0), (2, 1), (4, 0)])
    assert t.y_at(mpq(1)) == mpq(1, 2)
    assert t.y_at(mpq(3)) == mpq(1, 2)
    assert t.y_at(mpq(2)) == 1
    assert point_at(t, mpq(1, 2)) == (mpq(1, 2), mpq(1, 4))


def test_edge_index_at_vertex_maps_right():
    t = Terrain([(0, 0), (2, 1), (4, 0)])
    assert t.edge_index_at(mpq(0)) == 0
    assert t.edge_index_at(mpq(2)) == 1          # vertex: edge to its right
    assert t.edge_index_at(mpq(4)) == 1          # last abscissa: last edge
    assert t.edge_index_at(mpq(3, 2)) == 0


def test_mirrored_round_trip():
    t = FIX_VALLEY[0]
    back = t.mirrored().mirrored()
    assert back.vertices == t.vertices


def test_viewpoint_ordinals_follow_x_order():
    vp = ViewpointSet([5, 0, 3])
    assert vp.indices == (0, 3, 5)
    assert vp.m == 3


def test_viewpoint_set_rejects_bad_input():
    with pytest.raises(ValueError):
        ViewpointSet([])
    with pytest.raises(ValueError):
        ViewpointSet([1, 1])
    with pytest.raises(ValueError):
        ViewpointSet([0], radius=0)


def test_mirrored_viewpoints_reverse_ordinals():
    t = FIX_APEX[0]
    vp = ViewpointSet([0, 1])
    assert vp.mirrored(t).indices == (1, 2)


def test_validate_flags_collinear_vertices():
    t = Terrain([(0, 0), (1, 1), (2, 2), (3, 0)])
    rep = validate(t, ViewpointSet([0]))
    assert rep.collinear_triples
    assert not rep.ok


def test_validate_flags_vertical_bisector_as_nonfatal():
    t, vp = FIX_FLAT
    rep = validate(t, vp)
    assert rep.vertical_bisectors == [(0, 1)]
    assert rep.ok                       # special-cased, not a refusal


def test_fixtures_are_general_position():
    for t, vp in (FIX_PEAK, FIX_VALLEY, FIX_APEX):
        rep = validate(t, vp)
        assert rep.ok and not rep.vertical_bisectors


def test_validate_reports_are_printable():
    t = Terrain([(0, 0), (1, 1), (2, 2), (3, 0)])
    lines = list(validate(t, ViewpointSet([0])).lines())
    assert lines and all(isinstance(s, str) for s in lines)
