"""Canonical interval maps over the terrain's x-range.

A map partitions [x_min, x_max] into maximal intervals carrying a
label: a visibility flag, a frozenset of viewpoint ordinals, or the
ordinal of the closest visible viewpoint (None when invisible).  The
canonical form stores the strictly increasing breakpoint list plus one
label per open interval, with equal adjacent labels merged; it is
invariant under refinement of the breakpoints, so maps obtained by
different algorithms compare with plain equality.
"""

from __future__ import annotations

from functools import cmp_to_key

from .exactnum import exact_cmp


def _same_x(a, b) -> bool:
    return exact_cmp(a, b) == 0


class IntervalMap:
    """Breakpoints x_0 < ... < x_k with a label on each (x_i, x_{i+1})."""

    __slots__ = ("kind", "breakpoints", "labels", "meta")

    def __init__(self, kind: str, breakpoints, labels, meta=None):
        breakpoints = list(breakpoints)
        labels = list(labels)
        if len(breakpoints) != len(labels) + 1 or not labels:
            raise ValueError("need k+1 breakpoints for k >= 1 labels")
        for a, b in zip(breakpoints, breakpoints[1:]):
            if exact_cmp(a, b) >= 0:
                raise ValueError("breakpoints must strictly increase")
        for a, b in zip(labels, labels[1:]):
            if a == b:
                raise ValueError("adjacent labels must differ")
        self.kind = kind
        self.breakpoints = breakpoints
        self.labels = labels
        self.meta = meta or {}

    # -- construction ------------------------------------------------

    @classmethod
    def from_cells(cls, kind: str, cells, meta=None) -> "IntervalMap":
        """Build from contiguous (lo, hi, label) cells, merging equals."""
        bps, labels = [], []
        for lo, hi, label in cells:
            c = exact_cmp(lo, hi)
            if c > 0:
                raise ValueError("cell ends out of order")
            if c == 0:
                continue  # zero-length cells are not representable
            if bps and not _same_x(bps[-1], lo):
                raise ValueError("cells must tile the domain contiguously")
            if labels and labels[-1] == label:
                bps[-1] = hi
            else:
                if not bps:
                    bps.append(lo)
                bps.append(hi)
                labels.append(label)
        return cls(kind, bps, labels, meta)

    # -- queries -----------------------------------------------------

    def intervals(self):
        for i, label in enumerate(self.labels):
            yield self.breakpoints[i], self.breakpoints[i + 1], label

    @property
    def x_min(self):
        return self.breakpoints[0]

    @property
    def x_max(self):
        return self.breakpoints[-1]

    @property
    def size(self) -> int:
        """Number of maximal regions."""
        return len(self.labels)

    def label_on(self, lo, hi):
        """Label of the open interval (lo, hi); must not straddle a breakpoint."""
        for i, label in enumerate(self.labels):
            if (exact_cmp(self.breakpoints[i], lo) <= 0
                    and exact_cmp(hi, self.breakpoints[i + 1]) <= 0):
                return label
        raise ValueError("interval straddles a breakpoint")

    def interior_breakpoints(self, lo, hi) -> int:
        """How many breakpoints fall strictly inside (lo, hi)."""
        return sum(1 for x in self.breakpoints[1:-1]
                   if exact_cmp(lo, x) < 0 and exact_cmp(x, hi) < 0)

    # -- transforms --------------------------------------------------

    def mirrored(self) -> "IntervalMap":
        return type(self)(self.kind,
                          [-x for x in reversed(self.breakpoints)],
                          list(reversed(self.labels)))

    def relabeled(self, kind: str, fn) -> "IntervalMap":
        cells = [(lo, hi, fn(label)) for lo, hi, label in self.intervals()]
        return IntervalMap.from_cells(kind, cells)

    # -- equality ----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, IntervalMap):
            return NotImplemented
        return (self.kind == other.kind
                and len(self.breakpoints) == len(other.breakpoints)
                and all(_same_x(a, b) for a, b in
                        zip(self.breakpoints, other.breakpoints))
                and self.labels == other.labels)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __repr__(self):
        parts = ", ".join(f"[{lo!s},{hi!s}]:{label!r}"
                          for lo, hi, label in self.intervals())
        return f"<{self.kind} map {parts}>"


class ColVisMap(IntervalMap):
    """Colored visibility map; labels are frozensets of viewpoint ordinals.

    Stored delta-encoded: the first subset plus, per interior
    breakpoint, the ordinals gained and lost.  ``labels`` materializes
    the subsets on demand.
    """

    __slots__ = ("first_label", "deltas", "_labels")

    def __init__(self, kind, breakpoints, labels, meta=None):
        labels = [frozenset(s) for s in labels]
        super().__init__(kind, breakpoints, labels, meta)
        self.first_label = labels[0]
        self.deltas = [(b - a, a - b) for a, b in zip(labels, labels[1:])]
        # The base class keeps the materialized labels; they are cheap
        # relative to the breakpoints and make equality trivial.


def merge_labelwise(kind: str, maps, combine, cls=IntervalMap) -> IntervalMap:
    """Overlay several maps on one domain and combine their labels."""
    first = maps[0]
    for m in maps[1:]:
        if not (_same_x(m.x_min, first.x_min) and _same_x(m.x_max, first.x_max)):
            raise ValueError("maps cover different domains")
    merged = []
    for m in maps:
        merged.extend(m.breakpoints)
    merged.sort(key=cmp_to_key(exact_cmp))
    xs = [merged[0]]
    for x in merged[1:]:
        if not _same_x(xs[-1], x):
            xs.append(x)
    cursors = [0] * len(maps)
    cells = []
    for lo, hi in zip(xs, xs[1:]):
        labels = []
        for k, m in enumerate(maps):
            while (cursors[k] + 1 < len(m.breakpoints)
                   and exact_cmp(m.breakpoints[cursors[k] + 1], lo) <= 0):
                cursors[k] += 1
            labels.append(m.labels[cursors[k]])
        cells.append((lo, hi, combine(labels)))
    return cls.from_cells(kind, cells)
