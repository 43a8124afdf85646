"""Visibility map by a one-directional plane sweep, then a mirror merge.

The left sweep answers, for every terrain point, whether some viewpoint
at or left of it sees it.  It walks the chain once, maintaining

* ``nu``       -- is the current point seen from the left,
* ``p_a``      -- while seen: the leftmost viewpoint seeing it (the one
                  whose sight survives longest past any vertex),
* ``r_b``      -- while unseen: the lowest reappearance ray, whose
                  crossing with the chain switches visibility back on,
* ``rays``     -- the remaining reappearance rays, lowest first.

A reappearance ray starts at a viewpoint and passes through the vertex
that occluded it; the chain stays strictly below such a ray until the
viewpoint reappears.  Newly created rays start on the chain itself and
are therefore the lowest, so the order of ``rays`` only changes at
ray/ray crossings, where the ray that ends up on top is discarded: the
chain must cross the lower one first, and the viewpoint reinstated
there shields the upper ray's owner from ever switching ``nu``.

Rays enter ``rays`` only when a viewpoint vertex is reached (at most
once per viewpoint), which bounds both the insertions and the ray/ray
crossing events by the number of viewpoints; both counts are reported
in the result's metadata.
"""

from __future__ import annotations

from collections import Counter
from functools import cmp_to_key

from .exactnum import exact_cmp
from .geometry import Point2, orient
from .maps import IntervalMap, merge_labelwise
from .terrain import Terrain, ViewpointSet


class _Line:
    """y = slope*x + y0, the supporting line of a reappearance ray."""

    __slots__ = ("slope", "y0", "owner")

    def __init__(self, origin: Point2, through: Point2, owner: int):
        self.slope = (through.y - origin.y) / (through.x - origin.x)
        self.y0 = origin.y - self.slope * origin.x
        self.owner = owner

    def cross_x(self, other: "_Line"):
        if self.slope == other.slope:
            return None
        return (other.y0 - self.y0) / (self.slope - other.slope)


def _edge_line(u: Point2, w: Point2) -> _Line:
    return _Line(u, w, -1)


def _require_unlimited(viewpoints: ViewpointSet):
    if viewpoints.radius is not None:
        raise ValueError("sight radius set; use the limited-sight builders")


def build_left_vis(terrain: Terrain, viewpoints: ViewpointSet) -> IntervalMap:
    """Map of points seen by some viewpoint at or left of them.

    Expects input in general position (no three collinear vertices);
    run validate() first.  Metadata carries the sweep statistics and
    the primary-viewpoint segments used for witness annotation.
    """
    _require_unlimited(viewpoints)
    pts = terrain.vertices
    positions = viewpoints.positions(terrain)
    vp_at = {vi: k for k, vi in enumerate(viewpoints.indices)}

    nu = False
    p_a = None          # leftmost viewpoint seeing the current point
    p_b = None          # owner of r_b
    r_b = None          # lowest reappearance ray while nu is False
    rays = []           # remaining reappearance rays, lowest first
    transitions = []    # (x, new nu)
    primaries = []      # (x, ordinal or None)
    stats = {"insertions": 0, "ray_crossings": 0, "m": viewpoints.m}

    def set_primary(x, ordinal):
        nonlocal p_a
        p_a = ordinal
        primaries.append((x, ordinal))

    def vertex_event(vi):
        nonlocal nu, p_b, r_b
        v = pts[vi]
        pv = vp_at.get(vi)
        if nu:
            occluded = (vi + 1 < len(pts)
                        and orient(positions[p_a], v, pts[vi + 1]) < 0)
            if occluded and pv is not None:
                # Hand-over: the old primary's ray starts on the chain,
                # below every other ray.
                rays.insert(0, _Line(positions[p_a], v, p_a))
                stats["insertions"] += 1
                set_primary(v.x, pv)
            elif occluded:
                nu = False
                transitions.append((v.x, False))
                p_b = p_a
                r_b = _Line(positions[p_a], v, p_a)
                set_primary(v.x, None)
        elif pv is not None:
            nu = True
            transitions.append((v.x, True))
            if r_b is not None:
                rays.insert(0, r_b)
                stats["insertions"] += 1
            r_b = p_b = None
            set_primary(v.x, pv)

    def edge_events(vi):
        nonlocal nu, p_b, r_b
        u, w = pts[vi], pts[vi + 1]
        edge = _edge_line(u, w)
        cur = u.x
        while True:
            best = None   # (x, priority, tag, payload)
            if rays:
                for k in range(len(rays) - 1):
                    x = rays[k].cross_x(rays[k + 1])
                    if x is not None and cur < x < w.x:
                        if best is None or (x, 0) < best[:2]:
                            best = (x, 0, "D", k)
                if not nu and r_b is not None:
                    x = r_b.cross_x(rays[0])
                    if x is not None and cur < x < w.x:
                        if best is None or (x, 1) < best[:2]:
                            best = (x, 1, "C", None)
                x = edge.cross_x(rays[0])
                if x is not None and cur < x < w.x:
                    if best is None or (x, 2) < best[:2]:
                        best = (x, 2, "B", None)
            if not nu and r_b is not None:
                x = edge.cross_x(r_b)
                if x is not None and cur < x < w.x:
                    if best is None or (x, 3) < best[:2]:
                        best = (x, 3, "A", None)
            if best is None:
                return
            x, _, tag, payload = best
            cur = x
            if tag == "A":
                nu = True
                transitions.append((x, True))
                set_primary(x, p_b)
                r_b = p_b = None
            elif tag == "B":
                line = rays.pop(0)
                if not nu:
                    raise AssertionError(
                        "chain reached a stored ray below the lowest one")
                if positions[line.owner].x < positions[p_a].x:
                    set_primary(x, line.owner)
            elif tag == "C":
                stats["ray_crossings"] += 1
                r_b = rays.pop(0)
                p_b = r_b.owner
            else:  # D: the pair swaps; the ray ending up on top goes away
                stats["ray_crossings"] += 1
                rays.pop(payload)

    for vi in range(len(pts)):
        vertex_event(vi)
        if vi + 1 < len(pts):
            edge_events(vi)

    cells = []
    lo, state = terrain.x_min, False
    for x, st in transitions:
        if st == state:
            continue
        if x > lo:
            cells.append((lo, x, state))
            lo = x
        state = st
    if terrain.x_max > lo:
        cells.append((lo, terrain.x_max, state))
    if not cells:
        cells.append((terrain.x_min, terrain.x_max, state))

    segments = []
    for (x0, owner), (x1, _) in zip(primaries, primaries[1:]):
        if owner is not None and x1 > x0:
            segments.append((x0, x1, owner))
    if primaries and primaries[-1][1] is not None:
        x0, owner = primaries[-1]
        if terrain.x_max > x0:
            segments.append((x0, terrain.x_max, owner))

    return IntervalMap("vis", *_cells_split(cells),
                       meta={"stats": stats, "witness_segments": segments})


def _cells_split(cells):
    bps = [cells[0][0]] + [c[1] for c in cells]
    return bps, [c[2] for c in cells]


def merge_vis(left: IntervalMap, right: IntervalMap) -> IntervalMap:
    """Union of the two one-directional maps."""
    return merge_labelwise("vis", [left, right], lambda ls: ls[0] or ls[1])


def build_vis(terrain: Terrain, viewpoints: ViewpointSet) -> IntervalMap:
    """The visibility map: which maximal intervals are seen at all.

    Metadata: per-direction sweep statistics, and ``witnesses`` -- for
    each visible interval, the set of viewpoints that jointly cover it
    (a merged interval generally has no single covering viewpoint).
    """
    left = build_left_vis(terrain, viewpoints)
    mirror = build_left_vis(terrain.mirrored(), viewpoints.mirrored(terrain))
    right = mirror.mirrored()
    m = viewpoints.m
    segments = list(left.meta["witness_segments"])
    for lo, hi, owner in mirror.meta["witness_segments"]:
        segments.append((-hi, -lo, m - 1 - owner))

    out = merge_vis(left, right)
    # One sweep over segment endpoints annotates every visible interval
    # with the viewpoints whose witness segments overlap it.
    events = []
    for a, b, owner in segments:
        events.append((a, 1, owner))
        events.append((b, -1, owner))
    events.sort(key=cmp_to_key(lambda e, f: exact_cmp(e[0], f[0])))
    active = Counter()
    ptr = 0
    witnesses = []
    for lo, hi, label in out.intervals():
        while ptr < len(events) and exact_cmp(events[ptr][0], lo) <= 0:
            x, delta, owner = events[ptr]
            active[owner] += delta
            if not active[owner]:
                del active[owner]
            ptr += 1
        if not label:
            witnesses.append(None)
            continue
        cover = set(active)
        look = ptr
        while look < len(events) and exact_cmp(events[look][0], hi) < 0:
            if events[look][1] > 0:
                cover.add(events[look][2])
            look += 1
        witnesses.append(frozenset(cover))
    out.meta = {
        "stats": {"left": left.meta["stats"], "right": mirror.meta["stats"]},
        "witnesses": witnesses,
    }
    return out
