"""Colored visibility map: fixtures, oracle agreement, invariants."""

import random

from gmpy2 import mpq

from terravis import (FIX_APEX, FIX_PEAK, FIX_VALLEY, build_colvis, build_vis,
                      gen_random, oracle_map)
from terravis.colvis_sweep import (build_left_colvis,
                                   simultaneous_reappearance_audit)


def test_apex_fixture_regions():
    cv = build_colvis(*FIX_APEX)
    assert cv.breakpoints == [mpq(0), mpq(4), mpq(10)]
    assert cv.labels == [frozenset({0, 1}), frozenset({1})]


def test_apex_left_sweep_only_sees_rightward():
    lf = build_left_colvis(*FIX_APEX)
    assert lf.breakpoints == [mpq(0), mpq(4), mpq(10)]
    assert lf.labels == [frozenset({0}), frozenset({1})]


def test_valley_fixture_regions():
    cv = build_colvis(*FIX_VALLEY)
    assert cv.breakpoints == [mpq(0), mpq(2), mpq(28, 9), mpq(4)]
    assert cv.labels == [frozenset({0}), frozenset(), frozenset({0})]


def test_matches_oracle_on_random_instances():
    rng = random.Random(314159)
    for _ in range(40):
        n = rng.randrange(4, 28)
        m = rng.randrange(1, min(n, 6) + 1)
        t, vps = gen_random(n, m, seed=rng.randrange(1 << 30))
        fast = build_colvis(t, vps)
        assert fast == oracle_map(t, vps, "colvis")
        # Dropping colors gives exactly the plain visibility map.
        assert fast.relabeled("vis", bool) == build_vis(t, vps)
        # At most m+1 regions meet any single edge.
        for i in range(t.n - 1):
            a, b = t.edge(i)
            assert fast.interior_breakpoints(a.x, b.x) + 1 <= m + 1


def test_sweep_invariants_hold():
    rng = random.Random(62)
    for _ in range(25):
        n = rng.randrange(4, 24)
        m = rng.randrange(1, min(n, 6) + 1)
        t, vps = gen_random(n, m, seed=rng.randrange(1 << 30))
        cv = build_colvis(t, vps)
        for side in ("left", "right"):
            assert cv.meta["stats"][side]["suffix_violations"] == 0
        for trace in (cv.meta["left_trace"], cv.meta["right_trace"]):
            audit = simultaneous_reappearance_audit(trace)
            assert all(count <= 1 for count in audit.values())


def test_delta_encoding_reconstructs_labels():
    rng = random.Random(8)
    t, vps = gen_random(14, 3, seed=rng.randrange(1 << 30))
    cv = build_colvis(t, vps)
    cur = cv.labels[0]
    rebuilt = [cur]
    for gained, lost in cv.deltas:
        cur = (cur | gained) - lost
        rebuilt.append(cur)
    assert rebuilt == cv.labels
