"""Deterministic SVG rendering of systems and overlays.

The emitter is a pure function: the same system and overlays always yield
the byte-identical SVG 1.1 document.  All geometry is computed in exact
rationals (view box, line clipping, marker positions); coordinates are
written as plain decimal expansions rounded to 12 significant digits only
at the final formatting step, never read back.

Mathematical y points up; the flip to SVG's downward y happens at emission
by negating y coordinates, so the view box is computed from the flipped
corners.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import Line, Point
from .polar import Color, ColoredPointSystem, Committee, System

Rat = Fraction

_SIG_DIGITS = 12

# Five-pointed star of outer radius 1 centered at the origin, point up in
# screen coordinates (y down); vertex constants rounded once, here.
_STAR_PATH = (
    "M 0 -1 L 0.224514 -0.309017 L 0.951057 -0.309017 L 0.363271 0.118034 "
    "L 0.587785 0.809017 L 0 0.381966 L -0.587785 0.809017 "
    "L -0.363271 0.118034 L -0.951057 -0.309017 L -0.224514 -0.309017 Z"
)


def fmt(r: Rat) -> str:
    """Decimal expansion of a rational to 12 significant digits, without
    exponent notation and without trailing zeros."""
    r = Fraction(r)
    if r == 0:
        return "0"
    with decimal.localcontext() as ctx:
        ctx.prec = _SIG_DIGITS
        d = decimal.Decimal(r.numerator) / decimal.Decimal(r.denominator)
    text = format(d, "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text or "0"


def _xy(p: Point) -> tuple[str, str]:
    return fmt(p.x), fmt(-p.y)


@dataclass(frozen=True)
class PlotOverlays:
    """Optional decorations: a colored point system (black points drawn as
    filled disks, red ones as crosses), a committee (stars), a polygon
    outline (closed), and walk traces (open polylines)."""

    points: Optional[ColoredPointSystem] = None
    committee: Optional[Committee] = None
    polygon: tuple[Point, ...] = ()
    traces: tuple[tuple[Point, ...], ...] = ()


@dataclass(frozen=True)
class _Box:
    x_lo: Rat
    x_hi: Rat
    y_lo: Rat
    y_hi: Rat

    @property
    def width(self) -> Rat:
        return self.x_hi - self.x_lo

    @property
    def height(self) -> Rat:
        return self.y_hi - self.y_lo


def _feature_points(sys: System, overlays: PlotOverlays) -> list[Point]:
    from .geometry import line_intersect

    pts: list[Point] = []
    borders = [sys.border(j) for j in sys.indices()]
    hit = [False] * len(borders)
    for i in range(len(borders)):
        for j in range(i + 1, len(borders)):
            v = line_intersect(borders[i], borders[j])
            if isinstance(v, Point):
                pts.append(v)
                hit[i] = hit[j] = True
    for line, crossed in zip(borders, hit):
        if not crossed:
            pts.append(line.anchor())
    if overlays.points is not None:
        pts.extend(d.pos for d in overlays.points.all_points())
    if overlays.committee is not None:
        pts.extend(overlays.committee.members)
    pts.extend(overlays.polygon)
    for trace in overlays.traces:
        pts.extend(trace)
    return pts


def _view_box(pts: Sequence[Point]) -> _Box:
    if not pts:
        one = Fraction(1)
        return _Box(-one, one, -one, one)
    x_lo = min(p.x for p in pts)
    x_hi = max(p.x for p in pts)
    y_lo = min(p.y for p in pts)
    y_hi = max(p.y for p in pts)
    pad = max(x_hi - x_lo, y_hi - y_lo, Fraction(2)) * Fraction(3, 20)
    return _Box(x_lo - pad, x_hi + pad, y_lo - pad, y_hi + pad)


def _clip_line(line: Line, box: _Box) -> Optional[tuple[Point, Point]]:
    """Exact segment of the line inside the box, or None if it misses."""
    a = line.anchor()
    d = line.direction()
    t_lo: Optional[Rat] = None
    t_hi: Optional[Rat] = None
    for pos, vel, lo, hi in (
        (a.x, d.dx, box.x_lo, box.x_hi),
        (a.y, d.dy, box.y_lo, box.y_hi),
    ):
        if vel == 0:
            if not (lo <= pos <= hi):
                return None
            continue
        t1, t2 = (lo - pos) / vel, (hi - pos) / vel
        if t1 > t2:
            t1, t2 = t2, t1
        t_lo = t1 if t_lo is None else max(t_lo, t1)
        t_hi = t2 if t_hi is None else min(t_hi, t2)
    if t_lo is None or t_hi is None or t_lo >= t_hi:
        return None
    return line.point_at(t_lo), line.point_at(t_hi)


def _path_d(points: Sequence[Point], closed: bool) -> str:
    parts = []
    for i, p in enumerate(points):
        x, y = _xy(p)
        parts.append(f"{'M' if i == 0 else 'L'} {x} {y}")
    if closed:
        parts.append("Z")
    return " ".join(parts)


def plot_svg(sys: System, overlays: PlotOverlays = PlotOverlays()) -> str:
    """SVG 1.1 document showing the border lines of the system, clipped to
    an automatically fitted view box, plus the requested overlays."""
    box = _view_box(_feature_points(sys, overlays))
    w, h = box.width, box.height
    stroke_line = w / 250
    stroke_thin = w / 350
    disk_r = w / 90
    cross_arm = w / 70
    star_scale = w / 45

    out: list[str] = []
    out.append(
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{fmt(box.x_lo)} {fmt(-box.y_hi)} {fmt(w)} {fmt(h)}">'
    )

    out.append(f'<g stroke="#404040" stroke-width="{fmt(stroke_line)}" '
               'stroke-linecap="round">')
    for j in sys.indices():
        seg = _clip_line(sys.border(j), box)
        if seg is None:
            continue
        (x1, y1), (x2, y2) = _xy(seg[0]), _xy(seg[1])
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
    out.append("</g>")

    if overlays.polygon:
        out.append(
            f'<path d="{_path_d(overlays.polygon, closed=True)}" '
            f'fill="none" stroke="#1a7f37" '
            f'stroke-width="{fmt(stroke_line)}"/>'
        )

    for trace in overlays.traces:
        if len(trace) < 2:
            continue
        out.append(
            f'<path d="{_path_d(trace, closed=False)}" fill="none" '
            f'stroke="#888888" stroke-width="{fmt(stroke_thin)}" '
            f'stroke-dasharray="{fmt(w / 60)} {fmt(w / 120)}"/>'
        )

    if overlays.points is not None:
        for d in overlays.points.all_points():
            x, y = _xy(d.pos)
            if d.color is Color.BLACK:
                out.append(f'<circle cx="{x}" cy="{y}" r="{fmt(disk_r)}" '
                           'fill="#000000"/>')
            else:
                s = cross_arm
                xa, xb = fmt(d.pos.x - s), fmt(d.pos.x + s)
                ya, yb = fmt(-d.pos.y - s), fmt(-d.pos.y + s)
                out.append(
                    f'<path d="M {xa} {ya} L {xb} {yb} M {xa} {yb} '
                    f'L {xb} {ya}" stroke="#cc0000" '
                    f'stroke-width="{fmt(stroke_line)}" fill="none"/>'
                )

    if overlays.committee is not None:
        for p in overlays.committee.members:
            x, y = _xy(p)
            out.append(
                f'<g transform="translate({x} {y}) scale({fmt(star_scale)})">'
                f'<path d="{_STAR_PATH}" fill="#d4a017"/></g>'
            )

    out.append("</svg>")
    return "\n".join(out) + "\n"
