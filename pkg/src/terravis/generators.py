"""Instance generators: random terrains and a comb-shaped family whose
maps grow proportionally to (number of viewpoints) x (number of teeth).

The comb puts a descending column of viewpoints on the far left and a
row of unit-height teeth on the floor.  Every tooth hides the floor
behind it from every viewpoint, and the shadows end at m distinct
reappearance points per tooth; moreover a viewpoint that reappears
later is also closer from there on, so the colored *and* the Voronoi
map each gain about m regions per tooth.  A tiny parabolic lift
y += eta * x^2 is applied to all vertices so that no three are
collinear while the combinatorics of the shadows is preserved.
"""

from __future__ import annotations

import random

from gmpy2 import mpq

from .terrain import Terrain, ViewpointSet, validate


def gen_comb(m: int, t: int, n: int = None, eta=None, check: bool = True):
    """A comb instance with ``m`` viewpoints and ``t`` teeth.

    ``n`` optionally pads the vertex count (extra floor vertices before
    the final rise).  ``check`` re-validates general position and
    shrinks the lift if needed; skip it for very large instances, where
    the triple check would dominate the run time.
    """
    if m < 1 or t < 1:
        raise ValueError("need at least one viewpoint and one tooth")
    # Viewpoint heights sit in (5/2, 3), so a tooth at abscissa c with
    # tip height 1/c casts a shadow ending about 1/height past its tip:
    # inside the gap to the next tooth, at m distinct ordered points.
    # Lower viewpoints reappear later and, with the tiny x-spread, are
    # also strictly closer there, so the Voronoi owner changes at every
    # reappearance too.
    eps = mpq(1, 8 * m * (t + 2))
    base = []
    for i in range(m):
        base.append((i * eps, 3 - mpq(i + 1, 2 * (m + 1))))
    base.append((mpq(1), mpq(0)))
    for j in range(1, t + 1):
        c = mpq(2 * j + 1)
        h = 1 / c
        w = h / 4
        base.append((c - w, mpq(0)))
        base.append((c, h))
        base.append((c + w, mpq(0)))
    last = mpq(2 * t + 3)
    if n is not None:
        pad = n - len(base) - 1
        if pad < 0:
            raise ValueError("n too small for this comb")
        start = base[-1][0]
        for i in range(1, pad + 1):
            base.append((start + (last - start) * mpq(i, pad + 1), mpq(0)))
    base.append((last, mpq(0)))

    if eta is None:
        eta = mpq(1, 10 ** 6 * (2 * t + 4) ** 2 * m)
    for _ in range(32):
        verts = [(x, y + eta * x * x) for x, y in base]
        terrain = Terrain(verts)
        viewpoints = ViewpointSet(range(m))
        if not check:
            return terrain, viewpoints
        rep = validate(terrain, viewpoints)
        if not rep.collinear_triples and not rep.bisector_edge_collinearities:
            return terrain, viewpoints
        eta /= 17
    raise RuntimeError("could not reach general position")


def gen_random(n: int, m: int, seed: int, radius=None):
    """A random general-position instance with ``n`` vertices and ``m``
    viewpoints; resamples until validation finds nothing at all."""
    if n < 2 or m < 1 or m > n:
        raise ValueError("need n >= 2 and 1 <= m <= n")
    rng = random.Random(seed)
    while True:
        xs = sorted(rng.sample(range(0, 40 * n), n))
        verts = [(mpq(x, 4), mpq(rng.randrange(-40000, 40000), 997))
                 for x in xs]
        terrain = Terrain(verts)
        viewpoints = ViewpointSet(sorted(rng.sample(range(n), m)), radius)
        rep = validate(terrain, viewpoints)
        if rep.ok and not rep.vertical_bisectors:
            return terrain, viewpoints
