"""Exact number types used by every geometric predicate.

Two kinds of coordinates appear in the maps we build.  Breakpoints of
unlimited-sight maps are rational and are represented by ``gmpy2.mpq``
(arbitrary precision, always in lowest terms).  When a sight-distance
limit is active, breakpoints come from circle/segment intersections and
live in a real quadratic extension: values of the form ``a + b*sqrt(c)``
with rational ``a``, ``b`` and a square-free integer ``c``.  All
comparisons between such values are decided exactly by isolating the
radicals and squaring; no floating point is ever consulted.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

import gmpy2
from gmpy2 import mpq
from sympy.ntheory.factor_ import core as _squarefree_core

Rational = type(mpq(0))


def to_mpq(value) -> "mpq":
    """Coerce an exact value (int, str, Fraction, mpq) to mpq.

    Strings may be integers ("7"), fractions ("7/9") or decimal literals
    ("0.125"), all read exactly.  Floats are rejected: they carry binary
    rounding error and must never reach a predicate.
    """
    if isinstance(value, float):
        raise TypeError("refusing to build an exact rational from a float")
    if isinstance(value, str):
        value = Fraction(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    return mpq(value)


def _sqfree(n: int) -> tuple[int, int]:
    """Split n >= 0 as f*f*c with c square-free; returns (f, c)."""
    if n == 0:
        return 0, 1
    c = int(_squarefree_core(n))
    f = isqrt(n // c)
    return f, c


def _sign(q) -> int:
    return (q > 0) - (q < 0)


def _sign_pair(a, b, c: int) -> int:
    """Sign of a + b*sqrt(c) for rational a, b and integer c >= 0."""
    if b == 0 or c == 0:
        return _sign(a)
    sa, sb = _sign(a), _sign(b)
    if sa == sb or sa == 0:
        return sb if sa == 0 else sa
    if sb == 0:
        return sa
    # a and b have opposite signs: compare a^2 against b^2 c.
    d = _sign(a * a - b * b * c)
    if d == 0:
        return 0
    return sa if d > 0 else sb


class QuadExt:
    """Exact value a + b*sqrt(c), with b != 0 and c square-free, c > 1.

    Purely rational values are represented as mpq, never as QuadExt;
    use :func:`quadext` to build values in normalized form.
    """

    __slots__ = ("a", "b", "c")

    def __init__(self, a, b, c: int):
        self.a = to_mpq(a)
        self.b = to_mpq(b)
        self.c = int(c)

    # -- construction ------------------------------------------------

    def __repr__(self):
        return f"QuadExt({self.a!s}, {self.b!s}, {self.c})"

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    # -- arithmetic (closed within a single extension field) ---------

    def _split(self, other):
        if isinstance(other, QuadExt):
            if other.c != self.c:
                raise ValueError(
                    f"mixed radicals sqrt({self.c}) and sqrt({other.c}); "
                    "only comparisons are defined across extensions")
            return other.a, other.b
        return to_mpq(other), mpq(0)

    def __add__(self, other):
        oa, ob = self._split(other)
        return quadext(self.a + oa, self.b + ob, self.c)

    __radd__ = __add__

    def __sub__(self, other):
        oa, ob = self._split(other)
        return quadext(self.a - oa, self.b - ob, self.c)

    def __rsub__(self, other):
        oa, ob = self._split(other)
        return quadext(oa - self.a, ob - self.b, self.c)

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.c)

    def __mul__(self, other):
        oa, ob = self._split(other)
        return quadext(self.a * oa + self.b * ob * self.c,
                       self.a * ob + self.b * oa, self.c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QuadExt):
            oa, ob = self._split(other)
            norm = oa * oa - ob * ob * other.c
            return self * quadext(oa / norm, -ob / norm, other.c)
        q = to_mpq(other)
        return quadext(self.a / q, self.b / q, self.c)

    # -- ordering ----------------------------------------------------

    def __eq__(self, other):
        return exact_cmp(self, other) == 0 if _is_exact(other) else NotImplemented

    def __ne__(self, other):
        return exact_cmp(self, other) != 0 if _is_exact(other) else NotImplemented

    def __lt__(self, other):
        return exact_cmp(self, other) < 0

    def __le__(self, other):
        return exact_cmp(self, other) <= 0

    def __gt__(self, other):
        return exact_cmp(self, other) > 0

    def __ge__(self, other):
        return exact_cmp(self, other) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * float(self.c) ** 0.5

    def __bool__(self):
        return True


ExactX = Union[Rational, QuadExt]


def quadext(a, b, c: int) -> ExactX:
    """Normalized a + b*sqrt(c): collapses to mpq when the radical dies."""
    a, b, c = to_mpq(a), to_mpq(b), int(c)
    if c < 0:
        raise ValueError("negative radicand")
    if b == 0 or c == 0:
        return a
    f, c = _sqfree(c)
    b = b * f
    if c == 1:
        return a + b
    return QuadExt(a, b, c)


def sqrt_exact(q) -> ExactX:
    """Exact square root of a nonnegative rational, as mpq or QuadExt."""
    q = to_mpq(q)
    if q < 0:
        raise ValueError("square root of a negative rational")
    n, d = int(q.numerator), int(q.denominator)
    f, c = _sqfree(n * d)
    return quadext(0, mpq(f, d), c)


def _is_exact(x) -> bool:
    return isinstance(x, (QuadExt, int, Fraction)) or isinstance(x, Rational)


def _parts(x) -> tuple:
    if isinstance(x, QuadExt):
        return x.a, x.b, x.c
    return to_mpq(x), mpq(0), 0


def exact_cmp(x, y) -> int:
    """Three-way exact comparison of mpq/QuadExt values, any mix of fields."""
    a1, b1, c1 = _parts(x)
    a2, b2, c2 = _parts(y)
    a = a1 - a2
    if c1 == c2 or b1 == 0 or b2 == 0:
        c = c1 if b1 != 0 else c2
        return _sign_pair(a, b1 - b2, c)
    # sign of S = b1*sqrt(c1) - b2*sqrt(c2)
    s1, s2 = _sign(b1), _sign(b2)
    if s1 != s2:
        s_S = s1 if s1 != 0 else -s2
    else:
        d = _sign(b1 * b1 * c1 - b2 * b2 * c2)
        s_S = s1 * (1 if d > 0 else -1) if d != 0 else 0
    if s_S == 0:
        return _sign(a)
    if a == 0 or _sign(a) == s_S:
        return s_S
    # a and S have opposite signs; compare a^2 with S^2 exactly.
    d = _sign_pair(a * a - b1 * b1 * c1 - b2 * b2 * c2, 2 * b1 * b2, c1 * c2)
    if d == 0:
        return 0
    return _sign(a) if d > 0 else s_S


def exact_min(*values: ExactX) -> ExactX:
    best = values[0]
    for v in values[1:]:
        if exact_cmp(v, best) < 0:
            best = v
    return best


def exact_max(*values: ExactX) -> ExactX:
    best = values[0]
    for v in values[1:]:
        if exact_cmp(v, best) > 0:
            best = v
    return best


def bounds(x: ExactX, prec: int) -> tuple:
    """Rational lower/upper bounds of x, tight to about 2**-prec."""
    if not isinstance(x, QuadExt):
        q = to_mpq(x)
        return q, q
    r = isqrt(x.c << (2 * prec))
    lo_s = mpq(r, 1 << prec)
    hi_s = mpq(r + 1, 1 << prec)
    if x.b >= 0:
        return x.a + x.b * lo_s, x.a + x.b * hi_s
    return x.a + x.b * hi_s, x.a + x.b * lo_s


def rational_between(x: ExactX, y: ExactX):
    """A rational strictly between x < y (exact inputs, exact output)."""
    if exact_cmp(x, y) >= 0:
        raise ValueError("rational_between needs x < y")
    if not isinstance(x, QuadExt) and not isinstance(y, QuadExt):
        return (to_mpq(x) + to_mpq(y)) / 2
    prec = 16
    while True:
        _, hi_x = bounds(x, prec)
        lo_y, _ = bounds(y, prec)
        if hi_x < lo_y:
            return (hi_x + lo_y) / 2
        mid = (hi_x + lo_y) / 2
        if exact_cmp(x, mid) < 0 and exact_cmp(mid, y) < 0:
            return mid
        prec *= 2
