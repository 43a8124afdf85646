"""Text and JSON serialization of terrains and maps.

Numbers are written exactly: rationals as ``p/q`` (or a plain integer)
and quadratic-extension values as ``p/q+p'/q'*sqrt(c)``, so that a
parse of a serialization reproduces the object bit for bit on any
platform.  Decimal literals like ``1.25`` are accepted on input and
converted to exact rationals.

Terrain files::

    terrain 1.5d
    n 3
    0 0
    1 2
    2 0
    viewpoints 0
    radius 5/2        (optional)

Map files start with ``map <kind>`` followed by one interval per
line: ``[lo, hi] <label>``.  Labels are ``visible``/``invisible`` for
plain visibility, sorted ordinal sets like ``{0,2}`` for the colored
map and an ordinal or ``none`` for the Voronoi map.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from gmpy2 import mpq

from .exactnum import QuadExt, quadext
from .maps import ColVisMap, IntervalMap
from .terrain import Terrain, ViewpointSet


class FormatError(ValueError):
    """Raised when a file does not follow the documented format."""


_NUM = r"-?\d+(?:/\d+|\.\d+)?"
_QUAD_RE = re.compile(
    rf"^(?P<a>{_NUM})(?P<sign>[+-])(?P<b>\d+(?:/\d+|\.\d+)?)"
    r"\*sqrt\((?P<c>\d+)\)$")


def _rat_from_str(s: str):
    try:
        f = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad number {s!r}") from exc
    return mpq(f.numerator, f.denominator)


def num_to_str(v) -> str:
    if isinstance(v, QuadExt):
        sign = "-" if v.b < 0 else "+"
        return f"{v.a}{sign}{abs(v.b)}*sqrt({v.c})"
    return str(mpq(v))


def num_from_str(s: str):
    s = s.strip()
    m = _QUAD_RE.match(s)
    if m:
        b = _rat_from_str(m.group("b"))
        if m.group("sign") == "-":
            b = -b
        return quadext(_rat_from_str(m.group("a")), b, int(m.group("c")))
    return _rat_from_str(s)


# -- terrain files ---------------------------------------------------

def serialize_terrain(terrain: Terrain, viewpoints: ViewpointSet) -> str:
    lines = ["terrain 1.5d", f"n {terrain.n}"]
    for v in terrain.vertices:
        lines.append(f"{num_to_str(v.x)} {num_to_str(v.y)}")
    lines.append("viewpoints " + " ".join(str(i) for i in viewpoints.indices))
    if viewpoints.radius is not None:
        lines.append(f"radius {num_to_str(viewpoints.radius)}")
    return "\n".join(lines) + "\n"


def parse_terrain(text: str):
    lines = [ln.strip() for ln in text.splitlines()
             if ln.strip() and not ln.strip().startswith("#")]
    if not lines or lines[0] != "terrain 1.5d":
        raise FormatError("missing 'terrain 1.5d' header")
    if len(lines) < 2 or not lines[1].startswith("n "):
        raise FormatError("missing vertex count line")
    try:
        n = int(lines[1][2:])
    except ValueError as exc:
        raise FormatError("bad vertex count") from exc
    if len(lines) < 2 + n + 1:
        raise FormatError("truncated terrain file")
    verts = []
    for ln in lines[2:2 + n]:
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError(f"bad vertex line {ln!r}")
        verts.append((_rat_from_str(parts[0]), _rat_from_str(parts[1])))
    rest = lines[2 + n:]
    if not rest[0].startswith("viewpoints"):
        raise FormatError("missing viewpoints line")
    try:
        indices = [int(tok) for tok in rest[0].split()[1:]]
    except ValueError as exc:
        raise FormatError("bad viewpoint index") from exc
    radius = None
    for ln in rest[1:]:
        if ln.startswith("radius "):
            radius = _rat_from_str(ln.split(None, 1)[1])
        else:
            raise FormatError(f"unexpected line {ln!r}")
    try:
        terrain = Terrain(verts)
        viewpoints = ViewpointSet(indices, radius)
        viewpoints.positions(terrain)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    return terrain, viewpoints


# -- map files -------------------------------------------------------

def label_to_str(kind: str, label) -> str:
    if kind == "vis":
        return "visible" if label else "invisible"
    if kind == "colvis":
        return "{" + ",".join(str(i) for i in sorted(label)) + "}"
    if kind == "vorvis":
        return "none" if label is None else str(label)
    raise FormatError(f"unknown map kind {kind!r}")


def label_from_str(kind: str, s: str):
    s = s.strip()
    if kind == "vis":
        if s in ("visible", "invisible"):
            return s == "visible"
    elif kind == "colvis":
        if s.startswith("{") and s.endswith("}"):
            body = s[1:-1].strip()
            return frozenset(int(t) for t in body.split(",")) if body \
                else frozenset()
    elif kind == "vorvis":
        if s == "none":
            return None
        if s.lstrip("-").isdigit():
            return int(s)
    raise FormatError(f"bad {kind} label {s!r}")


def serialize_map(m: IntervalMap) -> str:
    lines = [f"map {m.kind}"]
    for lo, hi, label in m.intervals():
        lines.append(f"[{num_to_str(lo)}, {num_to_str(hi)}] "
                     f"{label_to_str(m.kind, label)}")
    return "\n".join(lines) + "\n"


_INTERVAL_RE = re.compile(r"^\[(?P<lo>[^,]+),(?P<hi>[^\]]+)\]\s+(?P<label>.+)$")


def parse_map(text: str):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("map "):
        raise FormatError("missing 'map <kind>' header")
    kind = lines[0][4:].strip()
    cells = []
    for ln in lines[1:]:
        m = _INTERVAL_RE.match(ln)
        if not m:
            raise FormatError(f"bad interval line {ln!r}")
        cells.append((num_from_str(m.group("lo")), num_from_str(m.group("hi")),
                      label_from_str(kind, m.group("label"))))
    if not cells:
        raise FormatError("empty map")
    cls = ColVisMap if kind == "colvis" else IntervalMap
    return cls.from_cells(kind, cells)


# -- JSON mirrors ----------------------------------------------------

def map_to_json(m: IntervalMap) -> str:
    return json.dumps({
        "kind": m.kind,
        "intervals": [
            {"lo": num_to_str(lo), "hi": num_to_str(hi),
             "label": label_to_str(m.kind, label)}
            for lo, hi, label in m.intervals()],
    }, indent=2) + "\n"


def map_from_json(text: str):
    try:
        data = json.loads(text)
        kind = data["kind"]
        cells = [(num_from_str(iv["lo"]), num_from_str(iv["hi"]),
                  label_from_str(kind, iv["label"]))
                 for iv in data["intervals"]]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise FormatError(f"bad map JSON: {exc}") from exc
    cls = ColVisMap if kind == "colvis" else IntervalMap
    return cls.from_cells(kind, cells)
