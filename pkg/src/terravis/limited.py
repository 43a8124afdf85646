"""Visibility under a sight radius: seeing needs a clear line *and*
distance at most r.

Each viewpoint's limited viewshed is computed by marching along the
chain away from it, switching between three modes:

* active -- the current stretch is seen: ends at the first crossing
  where the terrain leaves the sight disk, or at an occluding vertex;
* blocked -- behind an occluding vertex: one ray shot finds where the
  terrain reattains the sight line, which resumes either mode below
  depending on the reappearance distance;
* outside -- the sight line is clear but the terrain is too far: ends
  where the terrain re-enters the disk, or at an occluding vertex.

Disk crossings solve one quadratic per edge, so breakpoints may carry
square roots; all downstream comparisons stay exact.  The combined
maps are unions of the per-viewpoint marches, and the Voronoi variant
feeds the colored map into the standard region builder.
"""

from __future__ import annotations

from functools import cmp_to_key

from .exactnum import exact_cmp
from .geometry import Ray2, circle_edge_intersections, orient, sq_dist
from .maps import ColVisMap, IntervalMap, merge_labelwise
from .rayshoot import ShootIndex, shoot_ray
from .terrain import Terrain, ViewpointSet

_ACTIVE, _BLOCKED, _OUTSIDE = 0, 1, 2


def _march(terrain: Terrain, sindex: ShootIndex, vi: int, radius):
    """Seen abscissa intervals right of vertex ``vi`` for the viewpoint
    sitting on it, as a list of (lo, hi) pairs in increasing order."""
    pts = terrain.vertices
    n = terrain.n
    p = pts[vi]
    r2 = radius * radius
    out = []
    if vi == n - 1:
        return out

    mode = _ACTIVE
    seg_start = p.x
    cur_x = p.x
    ei = vi
    ray = None

    def first_crossing(a, b, leaving: bool):
        """First disk boundary crossing on edge ab strictly beyond
        cur_x in the wanted direction; tangencies do not count."""
        slope = (b.y - a.y) / (b.x - a.x)
        for qx, qy in circle_edge_intersections(p, radius, a, b):
            if exact_cmp(qx, cur_x) <= 0:
                continue
            deriv = 2 * (qx - p.x) + 2 * slope * (qy - p.y)
            s = exact_cmp(deriv, 0)
            if (s > 0) == leaving and s != 0:
                return qx
        return None

    while True:
        if mode == _BLOCKED:
            res = shoot_ray(sindex, ray, start_x=cur_x)
            if res is None:
                return out
            h, he = res
            cur_x = h.x
            ei = he
            if exact_cmp(sq_dist(p, h), r2) < 0:
                mode = _ACTIVE
                seg_start = cur_x
            else:
                mode = _OUTSIDE
            continue
        # Active and outside modes both walk the chain edge by edge;
        # every point passed has a clear sight line to p.
        a, b = pts[ei], pts[ei + 1]
        x = first_crossing(a, b, leaving=(mode == _ACTIVE))
        if x is not None:
            if mode == _ACTIVE:
                out.append((seg_start, x))
                mode = _OUTSIDE
            else:
                mode = _ACTIVE
                seg_start = x
            cur_x = x
            continue
        if ei + 1 == n - 1:
            if mode == _ACTIVE:
                out.append((seg_start, b.x))
            return out
        if orient(p, b, pts[ei + 2]) < 0:
            if mode == _ACTIVE:
                out.append((seg_start, b.x))
            ray = Ray2.through(p, b)
            cur_x = b.x
            mode = _BLOCKED
            continue
        ei += 1


def limited_viewshed(terrain: Terrain, vi: int, radius,
                     sindex: ShootIndex = None,
                     mirror_sindex: ShootIndex = None) -> IntervalMap:
    """Boolean map of the terrain seen from vertex ``vi`` within
    ``radius``; both marching directions merged over the full domain."""
    if sindex is None:
        sindex = ShootIndex(terrain)
    if mirror_sindex is None:
        mirror_sindex = ShootIndex(terrain.mirrored())
    spans = list(_march(terrain, sindex, vi, radius))
    for lo, hi in _march(mirror_sindex.terrain, mirror_sindex,
                         terrain.n - 1 - vi, radius):
        spans.append((-hi, -lo))
    spans.sort(key=cmp_to_key(lambda s, t: exact_cmp(s[0], t[0])))
    cells = []
    cursor = terrain.x_min
    for lo, hi in spans:
        if exact_cmp(cursor, lo) < 0:
            cells.append((cursor, lo, False))
            cursor = lo
        if exact_cmp(cursor, hi) < 0:
            cells.append((cursor, hi, True))
            cursor = hi
    if exact_cmp(cursor, terrain.x_max) < 0:
        cells.append((cursor, terrain.x_max, False))
    return IntervalMap.from_cells("vis", cells)


def _sheds(terrain: Terrain, viewpoints: ViewpointSet):
    if viewpoints.radius is None:
        raise ValueError("viewpoint set has no sight radius")
    sindex = ShootIndex(terrain)
    mindex = ShootIndex(terrain.mirrored())
    return [limited_viewshed(terrain, vi, viewpoints.radius, sindex, mindex)
            for vi in viewpoints.indices]


def build_colvis_limited(terrain: Terrain,
                         viewpoints: ViewpointSet) -> ColVisMap:
    """Colored visibility map under the sight radius."""
    sheds = _sheds(terrain, viewpoints)
    return merge_labelwise(
        "colvis", sheds,
        lambda labels: frozenset(i for i, b in enumerate(labels) if b),
        cls=ColVisMap)


def build_vis_limited(terrain: Terrain,
                      viewpoints: ViewpointSet) -> IntervalMap:
    """Joint visibility map under the sight radius."""
    sheds = _sheds(terrain, viewpoints)
    return merge_labelwise("vis", sheds, any)


def build_vorvis_limited(terrain: Terrain,
                         viewpoints: ViewpointSet) -> IntervalMap:
    """Voronoi visibility map under the sight radius."""
    from .vorvis import build_vorvis
    return build_vorvis(terrain, viewpoints,
                        colvis=build_colvis_limited(terrain, viewpoints))
