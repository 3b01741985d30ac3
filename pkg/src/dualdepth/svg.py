"""Deterministic SVG pictures of planar families.

Geometry is exact up to the final drawing step; floats only appear when
coordinates are printed, always with a fixed number of decimals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape as xml_escape

from . import linalg
from .arrangement import collect_hyperplanes
from .family import Family
from .geometry import (
    ConvexBody, DimensionError, Flat, HalfSpace, Point, as_point, clip_to_box, is_bounded, vertices,
)

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2")
BODY_COLOR = "#555555"
SIZE = 480


@dataclass
class Overlays:
    points: Sequence[Sequence] = ()
    flats: Sequence[Flat] = ()
    paths: Sequence[Sequence[Sequence]] = ()  # polylines through cell representatives
    groups: Sequence[Sequence[int]] = ()  # body indices per partition group, color-coded
    star: Sequence | None = None  # marks the deepest cell


def _num(v) -> str:
    s = f"{float(v):.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _view_box(family: Family, ov: Overlays) -> tuple[Point, Point]:
    pts = []
    unbounded = False
    for b in family:
        if is_bounded(b):
            pts.extend(vertices(b))
        else:
            unbounded = True
    pts.extend(as_point(p) for p in ov.points)
    pts.extend(as_point(p) for path in ov.paths for p in path)
    pts.extend(f.basepoint for f in ov.flats)
    if ov.star is not None:
        pts.append(as_point(ov.star))
    if unbounded:
        # pairwise crossings of the unbounded bodies' boundaries keep lines in frame
        planes = collect_hyperplanes([b for b in family if not is_bounded(b)])[0]
        for i in range(len(planes)):
            for j in range(i + 1, len(planes)):
                p = linalg.solve([planes[i][0], planes[j][0]], [planes[i][1], planes[j][1]])
                if p is not None:
                    pts.append(p)
    if not pts:
        return (Fraction(-1), Fraction(-1)), (Fraction(1), Fraction(1))
    lo = [min(p[j] for p in pts) for j in range(2)]
    hi = [max(p[j] for p in pts) for j in range(2)]
    span = max(hi[0] - lo[0], hi[1] - lo[1], Fraction(1))
    pad = span / 5
    return (lo[0] - pad, lo[1] - pad), (hi[0] + pad, hi[1] + pad)


def _ordered(verts: list[Point]) -> list[Point]:
    if len(verts) < 3:
        return verts
    cx = sum(float(v[0]) for v in verts) / len(verts)
    cy = sum(float(v[1]) for v in verts) / len(verts)
    return sorted(verts, key=lambda v: (math.atan2(float(v[1]) - cy, float(v[0]) - cx), v))


def render_svg(family: Family, overlays: Overlays | None = None, title: str | None = None) -> str:
    if family.dimension != 2:
        raise DimensionError("rendering supports the plane only")
    ov = overlays or Overlays()
    lo, hi = _view_box(family, ov)
    scale = Fraction(SIZE) / max(hi[0] - lo[0], hi[1] - lo[1])

    def xy(p) -> str:
        return f"{_num((p[0] - lo[0]) * scale)},{_num((hi[1] - p[1]) * scale)}"

    width = _num((hi[0] - lo[0]) * scale)
    height = _num((hi[1] - lo[1]) * scale)
    color_of = {}
    for gi, g in enumerate(ov.groups):
        for i in g:
            color_of[i] = PALETTE[gi % len(PALETTE)]

    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">']
    if title:
        out.append(f"  <title>{xml_escape(title)}</title>")
    out.append('  <rect x="0" y="0" width="100%" height="100%" fill="white"/>')
    out.append('  <g id="bodies" stroke-width="2">')
    for i, body in enumerate(family):
        color = color_of.get(i, BODY_COLOR)
        verts = _ordered(vertices(clip_to_box(body, lo, hi)))
        name = xml_escape(body.name)
        if not verts:
            continue
        if len(verts) == 1:
            cx, cy = xy(verts[0]).split(",")
            shape = f'<circle cx="{cx}" cy="{cy}" r="3" fill="{color}"/>'
        elif len(verts) == 2:
            (x1, y1), (x2, y2) = (xy(v).split(",") for v in verts)
            shape = f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{color}"/>'
        else:
            pts = " ".join(xy(v) for v in verts)
            shape = f'<polygon points="{pts}" fill="{color}" fill-opacity="0.25" stroke="{color}"/>'
        lx, ly = xy(verts[0]).split(",")
        out.append(f'    <g class="body" id="body-{i}"><title>{name}</title>{shape}'
                   f'<text x="{lx}" y="{ly}" font-size="11" fill="{color}">{name}</text></g>')
    out.append("  </g>")
    if ov.flats:
        out.append('  <g id="flats" stroke="#000000" stroke-dasharray="6,4">')
        for f in ov.flats:
            if f.dim == 0:
                cx, cy = xy(f.basepoint).split(",")
                out.append(f'    <circle cx="{cx}" cy="{cy}" r="4" fill="none"/>')
                continue
            seg = _clip_line(f, lo, hi)
            if seg:
                (x1, y1), (x2, y2) = (xy(p).split(",") for p in seg)
                out.append(f'    <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
        out.append("  </g>")
    if ov.paths:
        out.append('  <g id="paths" fill="none" stroke="#ff7f0e" stroke-width="1.5">')
        for path in ov.paths:
            out.append(f'    <polyline points="{" ".join(xy(as_point(p)) for p in path)}"/>')
        out.append("  </g>")
    if ov.points:
        out.append('  <g id="points" fill="#000000">')
        for p in ov.points:
            cx, cy = xy(as_point(p)).split(",")
            out.append(f'    <circle cx="{cx}" cy="{cy}" r="4"/>')
        out.append("  </g>")
    if ov.star is not None:
        out.append(f'  <g id="star">{_star(xy(as_point(ov.star)))}</g>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _clip_line(flat: Flat, lo, hi):
    (dx, dy), = flat.directions
    n = (-dy, dx)
    off = n[0] * flat.basepoint[0] + n[1] * flat.basepoint[1]
    line = ConvexBody("flat", (HalfSpace(n, off), HalfSpace((dy, -dx), -off)), 2)
    verts = vertices(clip_to_box(line, lo, hi))
    return verts if len(verts) == 2 else None


def _star(center: str) -> str:
    cx, cy = (float(v) for v in center.split(","))
    pts = []
    for k in range(10):
        r = 9 if k % 2 == 0 else 4
        a = math.pi / 2 + k * math.pi / 5
        pts.append(f"{_num(cx + r * math.cos(a))},{_num(cy - r * math.sin(a))}")
    return f'<polygon points="{" ".join(pts)}" fill="#ffd700" stroke="#000000"/>'
