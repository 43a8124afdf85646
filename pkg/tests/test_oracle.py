"""Brute-force reference: point visibility, fixture maps, timeout."""

import pytest
from gmpy2 import mpq

from terravis import (FIX_APEX, FIX_PEAK, FIX_VALLEY, OracleTimeout, Point2,
                      Terrain, ViewpointSet, gen_random, oracle_map)
from terravis.oracle import oracle_sees


def test_point_visibility_basics():
    t = Terrain([(0, 0), (1, 2), (2, 0)])
    apex = Point2(1, 2)
    assert oracle_sees(t, Point2(0, 0), apex)
    assert oracle_sees(t, apex, Point2(2, 0))
    assert not oracle_sees(t, Point2(0, 0), Point2(2, 0))
    # Grazing along an edge counts as visible (closed sightlines).
    assert oracle_sees(t, Point2(0, 0), Point2(mpq(1, 2), 1))


def test_fixture_maps():
    vis = oracle_map(*FIX_PEAK, "vis")
    assert vis.breakpoints == [mpq(0), mpq(1), mpq(2)]
    assert vis.labels == [True, False]

    vis = oracle_map(*FIX_VALLEY, "vis")
    assert vis.breakpoints == [mpq(0), mpq(2), mpq(28, 9), mpq(4)]
    assert vis.labels == [True, False, True]

    vor = oracle_map(*FIX_APEX, "vorvis")
    assert vor.breakpoints == [mpq(0), mpq(2), mpq(10)]
    assert vor.labels == [0, 1]


def test_adjacent_labels_always_differ():
    import random
    rng = random.Random(23)
    for kind in ("vis", "colvis", "vorvis"):
        t, vps = gen_random(16, 3, seed=rng.randrange(1 << 30))
        mp = oracle_map(t, vps, kind)
        for a, b in zip(mp.labels, mp.labels[1:]):
            assert a != b


def test_timeout_raises():
    t, vps = gen_random(30, 4, seed=77)
    with pytest.raises(OracleTimeout):
        oracle_map(t, vps, "vorvis", timeout=1e-9)
