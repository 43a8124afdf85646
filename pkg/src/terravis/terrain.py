"""Terrain model: the x-monotone chain, viewpoint sets and validation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from gmpy2 import mpq

from .exactnum import ExactX, exact_cmp, to_mpq
from .geometry import Line2, Point2, bisector, orient


class MonotonicityError(ValueError):
    """Raised when vertex abscissas are not strictly increasing."""


@dataclass(frozen=True)
class Terrain:
    """An x-monotone polygonal chain given by its vertices.

    Vertices must have strictly increasing x; this is enforced on
    construction (a violation is a hard error, not a report entry).
    """
    vertices: tuple

    def __init__(self, vertices):
        vs = tuple(v if isinstance(v, Point2) else Point2(*v) for v in vertices)
        if len(vs) < 2:
            raise ValueError("a terrain needs at least two vertices")
        for u, w in zip(vs, vs[1:]):
            if u.x >= w.x:
                raise MonotonicityError(
                    f"vertex abscissas must strictly increase ({u.x} then {w.x})")
        object.__setattr__(self, "vertices", vs)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def x_min(self):
        return self.vertices[0].x

    @property
    def x_max(self):
        return self.vertices[-1].x

    def edges(self):
        return zip(self.vertices, self.vertices[1:])

    def edge(self, i: int):
        return self.vertices[i], self.vertices[i + 1]

    def edge_index_at(self, x) -> int:
        """Index i with x in [x_i, x_{i+1}]; exact binary search."""
        if exact_cmp(x, self.x_min) < 0 or exact_cmp(x, self.x_max) > 0:
            raise ValueError(f"abscissa {x} outside the terrain domain")
        lo, hi = 0, self.n - 2
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if exact_cmp(x, self.vertices[mid].x) >= 0:
                lo = mid
            else:
                hi = mid - 1
        return lo

    def y_at(self, x) -> ExactX:
        a, b = self.edge(self.edge_index_at(x))
        if exact_cmp(x, a.x) == 0:
            return a.y
        return a.y + (x - a.x) * (b.y - a.y) / (b.x - a.x)

    def mirrored(self) -> "Terrain":
        """The terrain reflected through x -> -x (vertices reversed)."""
        return Terrain([Point2(-v.x, v.y) for v in reversed(self.vertices)])


def point_at(terrain: Terrain, x) -> tuple:
    """The terrain point at abscissa x, as an exact (x, y) pair."""
    return (x, terrain.y_at(x))


@dataclass(frozen=True)
class ViewpointSet:
    """Viewpoints sitting on terrain vertices, plus an optional sight radius.

    ``indices`` are vertex indices; viewpoints are numbered 0..m-1 in
    increasing vertex order and map labels use those ordinals.
    """
    indices: tuple
    radius: Optional[object] = None

    def __init__(self, indices, radius=None):
        idx = tuple(sorted(int(i) for i in indices))
        if not idx:
            raise ValueError("at least one viewpoint is required")
        if len(set(idx)) != len(idx):
            raise ValueError("duplicate viewpoint indices")
        if any(i < 0 for i in idx):
            raise ValueError("negative viewpoint index")
        if radius is not None:
            radius = to_mpq(radius)
            if radius <= 0:
                raise ValueError("sight radius must be positive")
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "radius", radius)

    @property
    def m(self) -> int:
        return len(self.indices)

    def positions(self, terrain: Terrain) -> list:
        if self.indices[-1] >= terrain.n:
            raise ValueError("viewpoint index beyond the last vertex")
        return [terrain.vertices[i] for i in self.indices]

    def mirrored(self, terrain: Terrain) -> "ViewpointSet":
        n = terrain.n
        return ViewpointSet([n - 1 - i for i in self.indices], self.radius)


@dataclass
class GeneralPositionReport:
    """Degeneracies that the sweep algorithms refuse to run on.

    ``collinear_triples`` lists vertex index triples on a common line,
    ``bisector_edge_collinearities`` lists (viewpoint pair, edge index)
    where a bisector contains a whole edge, and ``vertical_bisectors``
    lists viewpoint pairs at equal height.  Only the first two are
    fatal for the sweeps; vertical bisectors get special handling.
    """
    collinear_triples: list = field(default_factory=list)
    bisector_edge_collinearities: list = field(default_factory=list)
    vertical_bisectors: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        # Vertical bisectors (equal-height viewpoint pairs) are handled
        # throughout and reported only as a remark, not a refusal.
        return (not self.collinear_triples
                and not self.bisector_edge_collinearities)

    def lines(self):
        for t in self.collinear_triples:
            yield f"collinear vertices {t[0]} {t[1]} {t[2]}"
        for (i, j), e in self.bisector_edge_collinearities:
            yield f"bisector of viewpoints {i},{j} contains edge {e}"
        for i, j in self.vertical_bisectors:
            yield f"viewpoints {i},{j} share a height (vertical bisector)"


def validate(terrain: Terrain, viewpoints: ViewpointSet) -> GeneralPositionReport:
    """Collect the degeneracies relevant to the sweep algorithms.

    Monotonicity is not re-checked here: a non-monotone chain cannot
    even be constructed as a Terrain.
    """
    report = GeneralPositionReport()
    vs = terrain.vertices
    positions = viewpoints.positions(terrain)

    # Vertex abscissas are pairwise distinct, so every vertex pair has a
    # finite slope; equal slopes from a common vertex mean collinearity.
    for i in range(terrain.n - 2):
        seen = {}
        for j in range(i + 1, terrain.n):
            s = (vs[j].y - vs[i].y) / (vs[j].x - vs[i].x)
            if s in seen:
                report.collinear_triples.append((i, seen[s], j))
            else:
                seen[s] = j

    for a in range(len(positions)):
        for b in range(a + 1, len(positions)):
            p, q = positions[a], positions[b]
            if p.y == q.y:
                report.vertical_bisectors.append((a, b))
                continue
            bis = bisector(p, q)
            for e in range(terrain.n - 1):
                u, w = terrain.edge(e)
                if Line2.from_points(u, w) == bis:
                    report.bisector_edge_collinearities.append(((a, b), e))
    return report


def _fixture(vertices, indices, radius=None):
    t = Terrain(vertices)
    return t, ViewpointSet(indices, radius)


#: Single flat edge, a viewpoint on each endpoint.
FIX_FLAT = _fixture([(0, 0), (10, 0)], (0, 1))

#: One peak occluding everything behind it from the left viewpoint.
FIX_PEAK = _fixture([(0, 0), (1, 2), (2, 0)], (0,))

#: A valley whose far slope re-enters sight at x = 28/9.
FIX_VALLEY = _fixture([(0, 1), (1, 0), (2, mpq(1, 2)), (3, 0), (4, 2)], (0,))

#: A gentle apex between two viewpoints; Voronoi boundary at x = 2.
FIX_APEX = _fixture([(0, 0), (4, mpq(1, 10)), (10, 0)], (0, 1))
