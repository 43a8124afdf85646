"""Colored visibility map: which exact subset of viewpoints sees where.

Each viewpoint's visibility evolves independently: it sees the chain
from its own vertex onward until some vertex occludes it, and comes
back exactly where the chain crosses the ray from the viewpoint
through that vertex.  The left sweep therefore only needs two event
kinds -- terrain vertices, and reappearance points found by ray
shooting -- and touches the label set exactly where it changes.

At a vertex, the viewpoints that lose sight are always a suffix of the
currently-seeing list ordered by x (a viewpoint further left looks
over any vertex at a shallower angle, so its sight survives whenever a
righter one's does).  The sweep verifies this ordering and reports
violations in its statistics; none are expected.
"""

from __future__ import annotations

import heapq

from .geometry import Ray2, orient
from .maps import ColVisMap, merge_labelwise
from .rayshoot import ShootIndex, shoot_ray
from .terrain import Terrain, ViewpointSet
from .vis_sweep import _require_unlimited


def build_left_colvis(terrain: Terrain, viewpoints: ViewpointSet) -> ColVisMap:
    """Map of the sets of viewpoints seeing each point from the left.

    Expects general-position input (run validate() first).  Metadata:
    ``reappearances`` is the trace of (x, ordinal) reappearance events,
    ``stats`` counts ray shots and suffix-ordering violations.
    """
    _require_unlimited(viewpoints)
    pts = terrain.vertices
    positions = viewpoints.positions(terrain)
    vp_at = {vi: k for k, vi in enumerate(viewpoints.indices)}
    index = ShootIndex(terrain)

    visible = []         # ordinals currently seeing, increasing (= by x)
    heap = []            # (x, ordinal) pending reappearances
    changes = []         # (x, frozenset after the change)
    trace = []
    stats = {"shots": 0, "suffix_violations": 0}

    def record(x):
        changes.append((x, frozenset(visible)))

    for vi, v in enumerate(pts):
        while heap and heap[0][0] < v.x:
            x, p = heapq.heappop(heap)
            trace.append((x, p))
            visible.append(p)
            visible.sort()
            record(x)
        nxt = pts[vi + 1] if vi + 1 < len(pts) else None
        losers = []
        if nxt is not None:
            losers = [p for p in visible
                      if orient(positions[p], v, nxt) < 0]
            if losers != visible[len(visible) - len(losers):]:
                stats["suffix_violations"] += 1
        changed = False
        for p in losers:
            visible.remove(p)
            changed = True
            hit = shoot_ray(index, Ray2.through(positions[p], v), v.x)
            stats["shots"] += 1
            if hit is not None:
                heapq.heappush(heap, (hit[0].x, p))
        pv = vp_at.get(vi)
        if pv is not None:
            visible.append(pv)
            visible.sort()
            changed = True
        if changed:
            record(v.x)

    cells = []
    lo, cur = terrain.x_min, frozenset()
    for x, label in changes:
        if x > lo:
            if label == cur:
                continue
            cells.append((lo, x, cur))
            lo = x
        cur = label
    if terrain.x_max > lo:
        cells.append((lo, terrain.x_max, cur))
    if not cells:
        cells.append((terrain.x_min, terrain.x_max, cur))
    return ColVisMap.from_cells(
        "colvis", cells, meta={"reappearances": trace, "stats": stats})


def merge_colvis(left: ColVisMap, right: ColVisMap, m: int) -> ColVisMap:
    """Union overlay; the right map carries mirrored ordinals."""
    return merge_labelwise(
        "colvis", [left, right],
        lambda ls: ls[0] | frozenset(m - 1 - o for o in ls[1]),
        ColVisMap)


def build_colvis(terrain: Terrain, viewpoints: ViewpointSet) -> ColVisMap:
    """The colored visibility map for both sight directions."""
    left = build_left_colvis(terrain, viewpoints)
    mirror = build_left_colvis(terrain.mirrored(),
                               viewpoints.mirrored(terrain))
    m = viewpoints.m
    out = merge_colvis(left, mirror.mirrored(), m)
    out.meta = {
        "left_trace": list(left.meta["reappearances"]),
        "right_trace": [(-x, m - 1 - o)
                        for x, o in mirror.meta["reappearances"]],
        "stats": {"left": left.meta["stats"],
                  "right": mirror.meta["stats"]},
    }
    return out


def simultaneous_reappearance_audit(trace) -> dict:
    """How many reappearance points each viewpoint pair shares.

    Takes one sweep direction's (x, ordinal) trace and returns a map
    from ordinal pairs to the number of abscissas where both reappear
    at once; no pair can share more than one such point.
    """
    by_x = {}
    for x, p in trace:
        by_x.setdefault(x, set()).add(p)
    shared = {}
    for group in by_x.values():
        g = sorted(group)
        for i in range(len(g)):
            for j in range(i + 1, len(g)):
                key = (g[i], g[j])
                shared[key] = shared.get(key, 0) + 1
    return shared
