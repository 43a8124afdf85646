"""Visibility-map sweep: fixed instances, oracle agreement, stat bounds."""

import random

from gmpy2 import mpq

from terravis import (FIX_APEX, FIX_FLAT, FIX_PEAK, FIX_VALLEY, IntervalMap,
                      Terrain, ViewpointSet, build_vis, gen_random, oracle_map)


def test_single_peak_hides_its_far_slope():
    t, vps = FIX_PEAK
    vm = build_vis(t, vps)
    assert vm.breakpoints == [mpq(0), mpq(1), mpq(2)]
    assert vm.labels == [True, False]


def test_valley_viewpoint_regains_sight_on_far_wall():
    t, vps = FIX_VALLEY
    vm = build_vis(t, vps)
    assert vm.breakpoints == [mpq(0), mpq(2), mpq(28, 9), mpq(4)]
    assert vm.labels == [True, False, True]


def test_everything_visible_on_gentle_terrains():
    for t, vps in (FIX_FLAT, FIX_APEX):
        vm = build_vis(t, vps)
        assert vm.labels == [True]


def test_matches_oracle_on_random_instances():
    rng = random.Random(20260826)
    for _ in range(40):
        n = rng.randrange(4, 28)
        t, vps = gen_random(n, rng.randrange(1, min(n, 6) + 1),
                            seed=rng.randrange(1 << 30))
        fast = build_vis(t, vps)
        slow = oracle_map(t, vps, "vis")
        assert fast == slow


def test_stats_within_structural_bounds():
    rng = random.Random(5)
    for _ in range(25):
        n = rng.randrange(4, 28)
        m = rng.randrange(1, min(n, 6) + 1)
        t, vps = gen_random(n, m, seed=rng.randrange(1 << 30))
        vm = build_vis(t, vps)
        for side in ("left", "right"):
            st = vm.meta["stats"][side]
            assert st["insertions"] <= m
            assert st["ray_crossings"] <= m
        # At most two interior visibility transitions on any edge.
        for i in range(t.n - 1):
            a, b = t.edge(i)
            assert vm.interior_breakpoints(a.x, b.x) <= 2


def test_witnesses_cover_visible_regions():
    rng = random.Random(11)
    from terravis.exactnum import rational_between
    from terravis.oracle import oracle_sees
    from terravis.terrain import point_at
    from terravis.geometry import Point2
    for _ in range(15):
        n = rng.randrange(4, 20)
        m = rng.randrange(1, min(n, 5) + 1)
        t, vps = gen_random(n, m, seed=rng.randrange(1 << 30))
        vm = build_vis(t, vps)
        wits = vm.meta["witnesses"]
        assert len(wits) == len(vm.labels)
        for k, lab in enumerate(vm.labels):
            lo, hi = vm.breakpoints[k], vm.breakpoints[k + 1]
            # Three interior sample points per interval; the witness
            # set must jointly cover the interval, so some witness
            # sees each of them.  Invisible intervals carry None.
            samples = [rational_between(lo, hi)]
            samples.append(rational_between(lo, samples[0]))
            samples.append(rational_between(samples[0], hi))
            for x in samples:
                q = Point2(*point_at(t, x))
                seen = {i for i in range(len(vps.indices))
                        if oracle_sees(t, t.vertices[vps.indices[i]], q)}
                if lab:
                    assert wits[k] and wits[k] & seen
                else:
                    assert wits[k] is None and not seen
