"""Brute-force reference construction of all three maps.

Everything here works straight from the definitions: a point sees
another when the connecting segment never dips strictly below the
chain, and a map is built by collecting every abscissa at which any
label could possibly change, then evaluating the label inside each
candidate interval.  The result is the canonical map (refining the
breakpoint set never changes it), which makes this module the
independent referee for the sweep algorithms.  It shares nothing with
them beyond the exact-arithmetic primitives.
"""

from __future__ import annotations

import time
from functools import cmp_to_key

from .exactnum import exact_cmp, rational_between
from .geometry import (Point2, bisector, circle_edge_intersections, cmp_dist,
                       orient, sq_dist)
from .maps import ColVisMap, IntervalMap
from .terrain import Terrain, ViewpointSet


class OracleTimeout(Exception):
    """Raised when oracle_map exceeds its optional deadline."""


def oracle_sees(terrain: Terrain, a, b) -> bool:
    """Whether terrain points a and b see each other (closed visibility).

    True when segment ab contains no point strictly below the chain;
    checked against every vertex strictly between the endpoints.
    """
    ax = a.x if isinstance(a, Point2) else a[0]
    bx = b.x if isinstance(b, Point2) else b[0]
    if exact_cmp(ax, bx) > 0:
        a, b, ax, bx = b, a, bx, ax
    for v in terrain.vertices:
        if exact_cmp(ax, v.x) < 0 and exact_cmp(v.x, bx) < 0:
            if orient(a, b, v) > 0:
                return False
    return True


def _line_edge_x(p: Point2, q: Point2, u: Point2, w: Point2):
    """Abscissa where line pq meets the closed edge uw, or None."""
    s = (w.y - u.y) / (w.x - u.x)
    dx, dy = q.x - p.x, q.y - p.y
    den = dy - s * dx
    if den == 0:
        return None
    # p + t*(dx, dy) on the edge line y = u.y + s*(x - u.x)
    t = (u.y + s * (p.x - u.x) - p.y) / den
    x = p.x + t * dx
    if u.x <= x <= w.x:
        return x
    return None


def _bisector_edge_x(b, u: Point2, w: Point2):
    """Abscissa where line b (A x + B y = C) meets the closed edge uw."""
    s = (w.y - u.y) / (w.x - u.x)
    t0 = u.y - s * u.x
    den = b.a + b.b * s
    if den == 0:
        return None
    x = (b.c - b.b * t0) / den
    if u.x <= x <= w.x:
        return x
    return None


def breakpoint_candidates(terrain: Terrain, viewpoints: ViewpointSet,
                          kind: str, deadline=None) -> list:
    """Every abscissa at which the requested map's label could change.

    Vertices; crossings of each viewpoint-through-vertex sight line
    with each edge (only lines whose vertex is visible from the
    viewpoint matter, the rest are harmless extras); for the Voronoi
    map, bisector/edge crossings; with a sight radius, circle/edge
    crossings.  A superset is fine: the canonical merge removes
    breakpoints where nothing changes.
    """
    positions = viewpoints.positions(terrain)
    xs = [v.x for v in terrain.vertices]
    for p in positions:
        for v in terrain.vertices:
            if deadline is not None and time.monotonic() > deadline:
                raise OracleTimeout
            if v.x == p.x or not oracle_sees(terrain, p, v):
                continue
            forward = v.x > p.x
            for u, w in terrain.edges():
                if forward and w.x <= v.x:
                    continue
                if not forward and u.x >= v.x:
                    continue
                x = _line_edge_x(p, v, u, w)
                if x is not None:
                    xs.append(x)
    if kind == "vorvis":
        for i in range(len(positions)):
            for j in range(i + 1, len(positions)):
                if positions[i].y == positions[j].y:
                    # Vertical bisector: one crossing per edge span.
                    x = (positions[i].x + positions[j].x) / 2
                    if terrain.x_min <= x <= terrain.x_max:
                        xs.append(x)
                    continue
                b = bisector(positions[i], positions[j])
                for u, w in terrain.edges():
                    x = _bisector_edge_x(b, u, w)
                    if x is not None:
                        xs.append(x)
    if viewpoints.radius is not None:
        for p in positions:
            for u, w in terrain.edges():
                for q in circle_edge_intersections(p, viewpoints.radius, u, w):
                    xs.append(q[0])
    xs.sort(key=cmp_to_key(exact_cmp))
    out = [xs[0]]
    for x in xs[1:]:
        if exact_cmp(out[-1], x) != 0:
            out.append(x)
    return out


def _visible_ordinals(terrain, positions, radius, q):
    seen = []
    r_sq = None if radius is None else radius * radius
    for i, p in enumerate(positions):
        if r_sq is not None and exact_cmp(sq_dist(q, p), r_sq) > 0:
            continue
        if oracle_sees(terrain, p, q):
            seen.append(i)
    return seen


def oracle_map(terrain: Terrain, viewpoints: ViewpointSet, kind: str,
               timeout: float = None) -> IntervalMap:
    """Reference map of the requested kind ('vis', 'colvis', 'vorvis')."""
    if kind not in ("vis", "colvis", "vorvis"):
        raise ValueError(f"unknown map kind {kind!r}")
    deadline = None if timeout is None else time.monotonic() + timeout
    positions = viewpoints.positions(terrain)
    xs = breakpoint_candidates(terrain, viewpoints, kind, deadline)
    cells = []
    for lo, hi in zip(xs, xs[1:]):
        if deadline is not None and time.monotonic() > deadline:
            raise OracleTimeout
        x = rational_between(lo, hi)
        q = (x, terrain.y_at(x))
        seen = _visible_ordinals(terrain, positions, viewpoints.radius, q)
        if kind == "vis":
            label = bool(seen)
        elif kind == "colvis":
            label = frozenset(seen)
        else:
            # Closest visible viewpoint; distance ties go to the lower
            # ordinal, which never changes the merged map because a tie
            # on an open interval would mean a bisector lying along the
            # edge.
            label = None
            for i in seen:
                if label is None or cmp_dist(q, positions[i],
                                             positions[label]) < 0:
                    label = i
        cells.append((lo, hi, label))
    cls = ColVisMap if kind == "colvis" else IntervalMap
    return cls.from_cells(kind, cells)
