"""SVG rendering of a terrain and, optionally, a map banded below it.

This is the only module allowed to approximate: exact coordinates are
converted to floats for display purposes only.
"""

from __future__ import annotations

from .maps import IntervalMap
from .terrain import Terrain, ViewpointSet

_PALETTE = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1",
            "#76b7b2", "#edc948", "#ff9da7", "#9c755f", "#bab0ac"]
_NONE_COLOR = "#d0d0d0"


def _color(kind: str, label) -> str:
    if kind == "vis":
        return _PALETTE[2] if label else _NONE_COLOR
    if kind == "colvis":
        if not label:
            return _NONE_COLOR
        return _PALETTE[min(label) % len(_PALETTE)]
    if label is None:
        return _NONE_COLOR
    return _PALETTE[label % len(_PALETTE)]


def render_svg(terrain: Terrain, viewpoints: ViewpointSet = None,
               mp: IntervalMap = None, width: int = 800,
               height: int = 420) -> str:
    xs = [float(v.x) for v in terrain.vertices]
    ys = [float(v.y) for v in terrain.vertices]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if y1 == y0:
        y1 = y0 + 1.0
    pad = 20
    band_h = 24 if mp is not None else 0
    plot_h = height - 2 * pad - band_h

    def sx(x):
        return pad + (float(x) - x0) / (x1 - x0) * (width - 2 * pad)

    def sy(y):
        return pad + (y1 - float(y)) / (y1 - y0) * plot_h

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
             f'height="{height}" viewBox="0 0 {width} {height}">',
             f'<rect width="{width}" height="{height}" fill="white"/>']
    if mp is not None:
        y_band = height - pad - band_h
        for lo, hi, label in mp.intervals():
            parts.append(
                f'<rect x="{sx(lo):.2f}" y="{y_band}" '
                f'width="{max(sx(hi) - sx(lo), 0.5):.2f}" height="{band_h}" '
                f'fill="{_color(mp.kind, label)}" stroke="none"/>')
    points = " ".join(f"{sx(v.x):.2f},{sy(v.y):.2f}"
                      for v in terrain.vertices)
    parts.append(f'<polyline points="{points}" fill="none" '
                 'stroke="#333333" stroke-width="1.5"/>')
    if viewpoints is not None:
        for k, p in enumerate(viewpoints.positions(terrain)):
            c = _PALETTE[k % len(_PALETTE)]
            parts.append(f'<circle cx="{sx(p.x):.2f}" cy="{sy(p.y):.2f}" '
                         f'r="4" fill="{c}" stroke="#222" stroke-width="1"/>')
            if viewpoints.radius is not None:
                r_px = float(viewpoints.radius) / (x1 - x0) * (width - 2 * pad)
                parts.append(
                    f'<circle cx="{sx(p.x):.2f}" cy="{sy(p.y):.2f}" '
                    f'r="{r_px:.2f}" fill="none" stroke="{c}" '
                    'stroke-width="0.7" stroke-dasharray="4 3"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
