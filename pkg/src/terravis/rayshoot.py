"""First-hit ray queries against the terrain chain.

The sweep algorithms repeatedly ask where a rightward ray, cast from a
viewpoint across an occluding vertex, next meets the terrain.  A
segment tree over the edges, each node storing the upper convex hull
of the vertices it spans, answers this in O(log^2 n): a node whose
hull lies strictly below the ray cannot contain the first crossing and
is pruned, and the leftmost surviving leaf is inspected exactly.  The
same index answers inter-point visibility queries, and a small helper
enumerates the terrain points on a sight circle for the
limited-radius sweep.
"""

from __future__ import annotations

from functools import cmp_to_key

from .exactnum import exact_cmp, to_mpq
from .geometry import (Point2, Ray2, circle_edge_intersections, orient,
                       ray_edge_intersection)
from .terrain import Terrain


def _upper_hull(points):
    """Upper convex hull of points already sorted by x."""
    hull = []
    for p in points:
        while len(hull) >= 2 and orient(hull[-2], hull[-1], p) >= 0:
            hull.pop()
        hull.append(p)
    return tuple(hull)


def _hull_extreme(hull, dx, dy):
    """Hull vertex maximizing dx*y - dy*x (binary search, dx > 0).

    The functional has a positive y coefficient, so its values along
    the upper hull form a unimodal sequence.
    """
    lo, hi = 0, len(hull) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        a, b = hull[mid], hull[mid + 1]
        if exact_cmp(dx * b.y - dy * b.x, dx * a.y - dy * a.x) > 0:
            lo = mid + 1
        else:
            hi = mid
    return hull[lo]


class _Node:
    __slots__ = ("vlo", "vhi", "left", "right", "hull")

    def __init__(self, vlo, vhi, left, right, hull):
        self.vlo = vlo
        self.vhi = vhi
        self.left = left
        self.right = right
        self.hull = hull


class ShootIndex:
    """Segment tree of upper hulls over the terrain's vertices."""

    __slots__ = ("terrain", "root")

    def __init__(self, terrain: Terrain):
        self.terrain = terrain
        self.root = self._build(terrain.vertices, 0, terrain.n - 1)

    def _build(self, pts, vlo, vhi):
        if vhi - vlo == 1:
            return _Node(vlo, vhi, None, None, (pts[vlo], pts[vhi]))
        mid = (vlo + vhi) // 2
        left = self._build(pts, vlo, mid)
        right = self._build(pts, mid, vhi)
        return _Node(vlo, vhi, left, right, _upper_hull(pts[vlo:vhi + 1]))


def shoot_ray(index: ShootIndex, ray: Ray2, start_x=None):
    """First point strictly right of start_x where the terrain crosses
    the ray from strictly below to strictly above.

    Returns (Point2, edge_index) or None when the ray escapes.  The ray
    must point rightward; callers launch it from a viewpoint across an
    occluding vertex, so the terrain starts out below it.  A vertex
    that merely grazes the ray (terrain dips back down immediately) is
    not a hit.
    """
    if ray.dx <= 0:
        raise ValueError("only rightward rays can hit the terrain ahead")
    o = ray.origin
    if start_x is None:
        start_x = o.x
    pts = index.terrain.vertices
    g0 = ray.dx * o.y - ray.dy * o.x

    def below(p) -> int:
        """+1 when p is strictly below the ray line, -1 above, 0 on it."""
        return exact_cmp(g0, ray.dx * p.y - ray.dy * p.x)

    def leaf_hit(i):
        u, w = pts[i], pts[i + 1]
        s0, s1 = below(u), below(w)
        if s0 > 0 and s1 < 0:
            q = ray_edge_intersection(ray, u, w)
            if q is not None and exact_cmp(q.x, start_x) > 0:
                return q, i
            return None
        if s0 > 0 and s1 == 0:
            # Touch at the right endpoint: a hit only when the chain
            # eventually continues strictly above the ray.
            k = i + 2
            while k < len(pts):
                s = below(pts[k])
                if s < 0:
                    if exact_cmp(w.x, start_x) > 0:
                        return w, i
                    return None
                if s > 0:
                    return None
                k += 1
            return None
        if s0 == 0 and s1 < 0:
            # Crossing exactly at the left endpoint; counts only when
            # the chain approached from strictly below.
            k = i - 1
            while k >= 0:
                s = below(pts[k])
                if s > 0:
                    if exact_cmp(u.x, start_x) > 0:
                        return u, i
                    return None
                if s < 0:
                    return None
                k -= 1
            return None
        return None

    def search(node):
        if exact_cmp(pts[node.vhi].x, start_x) <= 0:
            return None
        top = _hull_extreme(node.hull, ray.dx, ray.dy)
        if below(top) > 0:
            return None
        if node.left is None:
            return leaf_hit(node.vlo)
        return search(node.left) or search(node.right)

    return search(index.root)


def index_sees(index: ShootIndex, a: Point2, b: Point2) -> bool:
    """Closed visibility between two points at or above the chain.

    True when no vertex with abscissa strictly between a and b lies
    strictly above segment ab; agrees with the brute-force definition.
    """
    if exact_cmp(a.x, b.x) > 0:
        a, b = b, a
    if exact_cmp(a.x, b.x) == 0:
        return True
    pts = index.terrain.vertices
    dx, dy = b.x - a.x, b.y - a.y
    g0 = dx * a.y - dy * a.x

    def above(p) -> bool:
        return exact_cmp(dx * p.y - dy * p.x, g0) > 0

    def blocked(node):
        if (exact_cmp(pts[node.vhi].x, a.x) <= 0
                or exact_cmp(pts[node.vlo].x, b.x) >= 0):
            return False
        if (exact_cmp(a.x, pts[node.vlo].x) < 0
                and exact_cmp(pts[node.vhi].x, b.x) < 0):
            return above(_hull_extreme(node.hull, dx, dy))
        if node.left is None:
            for k in (node.vlo, node.vhi):
                if (exact_cmp(a.x, pts[k].x) < 0
                        and exact_cmp(pts[k].x, b.x) < 0 and above(pts[k])):
                    return True
            return False
        return blocked(node.left) or blocked(node.right)

    return not blocked(index.root)


def shoot_arc(terrain: Terrain, center: Point2, radius):
    """Terrain points at distance exactly radius right of the center.

    Returns [((x, y), edge_index), ...] for every intersection of the
    sight circle with the chain at x > center.x, ordered by increasing
    y -- which on the right half-circle is the counterclockwise angular
    order.  Coordinates may live in a quadratic extension.
    """
    radius = to_mpq(radius)
    hits = []
    lo = center.x - radius
    hi = center.x + radius
    for i in range(terrain.n - 1):
        u, w = terrain.edge(i)
        if w.x < lo or u.x > hi:
            continue
        for q in circle_edge_intersections(center, radius, u, w):
            if exact_cmp(q[0], center.x) > 0:
                hits.append((q, i))
    hits.sort(key=cmp_to_key(lambda p, q: exact_cmp(p[0][1], q[0][1])))
    out = []
    for h in hits:
        if out and exact_cmp(out[-1][0][1], h[0][1]) == 0:
            continue
        out.append(h)
    return out
