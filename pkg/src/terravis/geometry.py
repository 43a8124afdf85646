"""Primitive objects and predicates shared by every algorithm.

All predicates here are exact.  Terrain vertices and viewpoints always
have rational coordinates; points produced by circle intersections may
carry quadratic-extension coordinates, and the distance comparisons
accept those too.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .exactnum import ExactX, exact_cmp, sqrt_exact, to_mpq


@dataclass(frozen=True)
class Point2:
    """A point with exact rational coordinates."""
    x: object
    y: object

    def __post_init__(self):
        object.__setattr__(self, "x", to_mpq(self.x))
        object.__setattr__(self, "y", to_mpq(self.y))

    def __iter__(self):
        yield self.x
        yield self.y

    def __repr__(self):
        return f"Point2({self.x!s}, {self.y!s})"


@dataclass(frozen=True)
class Ray2:
    """Ray from ``origin`` in direction ``(dx, dy)`` (rational, not both 0)."""
    origin: Point2
    dx: object
    dy: object

    def __post_init__(self):
        object.__setattr__(self, "dx", to_mpq(self.dx))
        object.__setattr__(self, "dy", to_mpq(self.dy))
        if self.dx == 0 and self.dy == 0:
            raise ValueError("ray needs a nonzero direction")

    @classmethod
    def through(cls, origin: Point2, target: Point2) -> "Ray2":
        return cls(origin, target.x - origin.x, target.y - origin.y)

    def y_at(self, x):
        """Height of the supporting line at abscissa x (requires dx != 0)."""
        return self.origin.y + (x - self.origin.x) * self.dy / self.dx


@dataclass(frozen=True)
class Line2:
    """Line A*x + B*y = C in a canonical scaling.

    The first nonzero coefficient among (A, B) is normalized to 1, so
    two Line2 values are equal exactly when they describe the same line.
    """
    a: object
    b: object
    c: object

    def __post_init__(self):
        a, b, c = to_mpq(self.a), to_mpq(self.b), to_mpq(self.c)
        if a != 0:
            b, c, a = b / a, c / a, mpq(1)
        elif b != 0:
            c, b = c / b, mpq(1)
        else:
            raise ValueError("degenerate line")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @classmethod
    def from_points(cls, p: Point2, q: Point2) -> "Line2":
        return cls(q.y - p.y, p.x - q.x, (q.y - p.y) * p.x + (p.x - q.x) * p.y)

    @property
    def is_vertical(self) -> bool:
        return self.b == 0

    def side(self, p) -> int:
        """Sign of A*x + B*y - C at p (accepts exact extension coords)."""
        px, py = (p.x, p.y) if isinstance(p, Point2) else p
        return exact_cmp(self.a * px + self.b * py, self.c)


def orient(a, b, c) -> int:
    """Orientation sign of the triple a, b, c.

    +1 when c lies to the left of the directed line a->b (counter-
    clockwise), -1 to the right, 0 when collinear.
    """
    ax, ay = (a.x, a.y) if isinstance(a, Point2) else a
    bx, by = (b.x, b.y) if isinstance(b, Point2) else b
    cx, cy = (c.x, c.y) if isinstance(c, Point2) else c
    return exact_cmp((bx - ax) * (cy - ay), (by - ay) * (cx - ax))


def bisector(p: Point2, q: Point2) -> Line2:
    """Perpendicular bisector of pq: the locus equidistant from both."""
    if p == q:
        raise ValueError("bisector of a point with itself")
    return Line2(2 * (q.x - p.x), 2 * (q.y - p.y),
                 q.x * q.x + q.y * q.y - p.x * p.x - p.y * p.y)


def sq_dist(a, b) -> ExactX:
    ax, ay = (a.x, a.y) if isinstance(a, Point2) else a
    bx, by = (b.x, b.y) if isinstance(b, Point2) else b
    dx = ax - bx
    dy = ay - by
    return dx * dx + dy * dy


def cmp_dist(q, p1, p2) -> int:
    """-1 if q is strictly closer to p1, +1 if closer to p2, 0 if tied."""
    return exact_cmp(sq_dist(q, p1), sq_dist(q, p2))


def ray_edge_intersection(ray: Ray2, a: Point2, b: Point2):
    """Intersection point of a ray with the closed segment ab, or None.

    Parallel (including collinear) configurations yield None; callers
    that care about overlap handle those through orientation tests.
    """
    ex, ey = b.x - a.x, b.y - a.y
    den = ray.dx * ey - ray.dy * ex
    if den == 0:
        return None
    qx, qy = a.x - ray.origin.x, a.y - ray.origin.y
    t = (qx * ey - qy * ex) / den       # along the ray
    s = (qx * ray.dy - qy * ray.dx) / den  # along the segment
    if t < 0 or s < 0 or s > 1:
        return None
    return Point2(ray.origin.x + t * ray.dx, ray.origin.y + t * ray.dy)


def circle_edge_intersections(center: Point2, radius, a: Point2, b: Point2):
    """Points of the circle |p - center| = radius on the closed segment ab.

    Returns 0-2 points ordered along the segment; coordinates are exact
    and may live in a quadratic extension.
    """
    radius = to_mpq(radius)
    dx, dy = b.x - a.x, b.y - a.y
    fx, fy = a.x - center.x, a.y - center.y
    qa = dx * dx + dy * dy
    if qa == 0:
        raise ValueError("degenerate segment")
    qb = 2 * (fx * dx + fy * dy)
    qc = fx * fx + fy * fy - radius * radius
    disc = qb * qb - 4 * qa * qc
    if disc < 0:
        return []
    root = sqrt_exact(disc)
    points = []
    for sign in (-1, 1):
        t = (-qb + sign * root) / (2 * qa)
        if exact_cmp(t, 0) >= 0 and exact_cmp(t, 1) <= 0:
            points.append((a.x + t * dx, a.y + t * dy))
        if disc == 0:
            break
    return points


def dist_diff_linear(edge_a: Point2, edge_b: Point2, p1: Point2, p2: Point2):
    """Coefficients (alpha, beta) of f(x) = d^2(T(x), p1) - d^2(T(x), p2)
    for terrain points T(x) on the supporting line of edge_a edge_b.

    The quadratic terms cancel, so f is linear in x; its sign tells
    which viewpoint is closer anywhere on the edge.
    """
    slope = (edge_b.y - edge_a.y) / (edge_b.x - edge_a.x)
    t0 = edge_a.y - slope * edge_a.x
    alpha = -2 * (p1.x - p2.x) - 2 * slope * (p1.y - p2.y)
    beta = (p1.x * p1.x - p2.x * p2.x + p1.y * p1.y - p2.y * p2.y
            - 2 * t0 * (p1.y - p2.y))
    return alpha, beta
