"""Exact planar geometry over the rationals.

Points, directions, open half-planes, their traces on lines, symbolic
perturbation, and exact feasibility of systems of open half-planes.
All coordinates are fractions.Fraction; nothing here ever touches floats.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Rat = Fraction


class GeometryError(Exception):
    pass


class Side(Enum):
    INSIDE = 1
    BOUNDARY = 0
    OUTSIDE = -1


def _side_of_sign(v: Rat) -> Side:
    if v > 0:
        return Side.INSIDE
    if v < 0:
        return Side.OUTSIDE
    return Side.BOUNDARY


@dataclass(frozen=True)
class Point:
    x: Rat
    y: Rat

    def __sub__(self, other: "Point") -> "Direction":
        return Direction(self.x - other.x, self.y - other.y)

    def __add__(self, d: "Direction") -> "Point":
        return Point(self.x + d.dx, self.y + d.dy)

    def key(self) -> tuple:
        return (self.x, self.y)


@dataclass(frozen=True)
class Direction:
    dx: Rat
    dy: Rat

    def __add__(self, other: "Direction") -> "Direction":
        return Direction(self.dx + other.dx, self.dy + other.dy)

    def __neg__(self) -> "Direction":
        return Direction(-self.dx, -self.dy)

    def scale(self, t: Rat) -> "Direction":
        return Direction(self.dx * t, self.dy * t)

    def is_zero(self) -> bool:
        return self.dx == 0 and self.dy == 0

    def perp(self) -> "Direction":
        # rotate by +90 degrees
        return Direction(-self.dy, self.dx)

    def normalized(self) -> "Direction":
        """Primitive integer representative of the same open ray."""
        if self.is_zero():
            raise GeometryError("cannot normalize zero direction")
        den = self.dx.denominator * self.dy.denominator // math.gcd(
            self.dx.denominator, self.dy.denominator
        )
        ax = self.dx.numerator * (den // self.dx.denominator)
        ay = self.dy.numerator * (den // self.dy.denominator)
        g = math.gcd(abs(ax), abs(ay))
        return Direction(Fraction(ax // g), Fraction(ay // g))


def dot(a: Direction, b: Direction) -> Rat:
    return a.dx * b.dx + a.dy * b.dy


def cross(a: Direction, b: Direction) -> Rat:
    return a.dx * b.dy - a.dy * b.dx


def same_direction(a: Direction, b: Direction) -> bool:
    return cross(a, b) == 0 and dot(a, b) > 0


def opposite_direction(a: Direction, b: Direction) -> bool:
    return cross(a, b) == 0 and dot(a, b) < 0


def angular_sort(dirs: Sequence["Direction"]) -> list["Direction"]:
    """Counterclockwise full-circle order, starting from the positive
    x-axis; exact (no trigonometry). Parallel same-sense inputs tie."""

    def half(d: Direction) -> int:
        return 0 if (d.dy > 0 or (d.dy == 0 and d.dx > 0)) else 1

    def cmp(a: Direction, b: Direction) -> int:
        ha, hb = half(a), half(b)
        if ha != hb:
            return ha - hb
        cr = cross(a, b)
        if cr == 0:
            return 0
        return -1 if cr > 0 else 1

    return sorted(dirs, key=functools.cmp_to_key(cmp))


ORIGIN = Point(Fraction(0), Fraction(0))


@dataclass(frozen=True)
class HalfPlane:
    """Open half-plane {x : (c, x) > b}. c must be nonzero."""

    cx: Rat
    cy: Rat
    b: Rat

    def __post_init__(self):
        if self.cx == 0 and self.cy == 0:
            raise GeometryError("half-plane with zero normal")

    @property
    def normal(self) -> Direction:
        return Direction(self.cx, self.cy)

    def value_at(self, p: Point) -> Rat:
        """Signed slack (c, p) - b; positive inside."""
        return self.cx * p.x + self.cy * p.y - self.b

    def border(self) -> "Line":
        return Line(self.cx, self.cy, self.b)


@dataclass(frozen=True)
class Line:
    """Line {x : (c, x) = b} with normal c != 0."""

    cx: Rat
    cy: Rat
    b: Rat

    def __post_init__(self):
        if self.cx == 0 and self.cy == 0:
            raise GeometryError("line with zero normal")

    @property
    def normal(self) -> Direction:
        return Direction(self.cx, self.cy)

    def direction(self) -> Direction:
        return Direction(-self.cy, self.cx)

    def anchor(self) -> Point:
        # foot of the perpendicular from the origin, always on the line
        n2 = self.cx * self.cx + self.cy * self.cy
        return Point(self.cx * self.b / n2, self.cy * self.b / n2)

    def point_at(self, t: Rat) -> Point:
        return self.anchor() + self.direction().scale(t)

    def param_of(self, p: Point) -> Rat:
        """Parameter t with point_at(t) == p; p must lie on the line."""
        d = self.direction()
        v = p - self.anchor()
        assert cross(d, v) == 0, "point not on line"
        return dot(v, d) / dot(d, d)

    def same_line(self, other: "Line") -> bool:
        if cross(self.normal, other.normal) != 0:
            return False
        return (
            self.b * other.cx == other.b * self.cx
            and self.b * other.cy == other.b * self.cy
        )


# ---------------------------------------------------------------------------
# subsets of a line


class LineSet:
    pass


@dataclass(frozen=True)
class EmptySet(LineSet):
    pass


@dataclass(frozen=True)
class PointSet(LineSet):
    p: Point


@dataclass(frozen=True)
class Ray(LineSet):
    """Open ray {vertex + t*dir : t > 0}; the vertex is excluded."""

    vertex: Point
    dir: Direction

    def key(self) -> tuple:
        d = self.dir.normalized()
        return (self.vertex.key(), d.dx, d.dy)


@dataclass(frozen=True)
class Segment(LineSet):
    a: Point
    b: Point


@dataclass(frozen=True)
class FullLine(LineSet):
    line: Line


@dataclass(frozen=True)
class PerturbedPoint:
    """Symbolic point vertex + eps*dir for an unspecified small eps > 0."""

    vertex: Point
    dir: Direction

    def __post_init__(self):
        if self.dir.is_zero():
            raise GeometryError("perturbed point with zero direction")


def side_of(hp: HalfPlane, p: Point) -> Side:
    return _side_of_sign(hp.value_at(p))


def side_of_perturbed(hp: HalfPlane, pp: PerturbedPoint) -> Side:
    """Side of vertex + eps*dir for all small eps > 0. Lexicographic sign."""
    v = hp.value_at(pp.vertex)
    if v != 0:
        return _side_of_sign(v)
    return _side_of_sign(dot(hp.normal, pp.dir))


# sentinels for line_intersect
class _LineRelation(Enum):
    PARALLEL = "parallel"
    IDENTICAL = "identical"


PARALLEL = _LineRelation.PARALLEL
IDENTICAL = _LineRelation.IDENTICAL


def line_intersect(l1: Line, l2: Line) -> Union[Point, _LineRelation]:
    det = l1.cx * l2.cy - l1.cy * l2.cx
    if det == 0:
        return IDENTICAL if l1.same_line(l2) else PARALLEL
    x = (l1.b * l2.cy - l2.b * l1.cy) / det
    y = (l1.cx * l2.b - l2.cx * l1.b) / det
    return Point(x, y)


def halfplane_cap_line(hp: HalfPlane, l: Line) -> LineSet:
    """The open set {x in l : (c, x) > b}: Empty, an open Ray, or l itself."""
    u = l.direction()
    p0 = l.anchor()
    a = dot(hp.normal, u)
    v0 = hp.value_at(p0)
    if a == 0:
        return FullLine(l) if v0 > 0 else EmptySet()
    t_star = -v0 / a
    vertex = l.point_at(t_star)
    return Ray(vertex, u if a > 0 else -u)


def materialize(pp: PerturbedPoint, halfplanes: Iterable[HalfPlane]) -> Point:
    """A concrete point realizing the perturbed point against the given
    half-planes: same side for every one of them.

    eps is half the smallest |slack|/|rate| over half-planes whose borders
    miss the vertex; half-planes through the vertex are satisfied for every
    eps of the correct sign, so they impose no bound.
    """
    hps = list(halfplanes)
    bounds = []
    for hp in hps:
        v = hp.value_at(pp.vertex)
        if v == 0:
            continue
        rate = dot(hp.normal, pp.dir)
        denom = max(Fraction(1), abs(rate))
        bounds.append(abs(v) / denom)
    eps = (min(bounds) if bounds else Fraction(1)) / 2
    q = pp.vertex + pp.dir.scale(eps)
    for hp in hps:
        assert side_of(hp, q) == side_of_perturbed(hp, pp)
    return q


# ---------------------------------------------------------------------------
# convex hulls


def convex_hull(points: Sequence[Point]) -> list[Point]:
    """Hull vertices in counterclockwise order, collinear points dropped."""
    pts = sorted(set((p.x, p.y) for p in points))
    pts = [Point(x, y) for x, y in pts]
    if len(pts) <= 2:
        return pts

    def half(seq):
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and cross(out[-1] - out[-2], p - out[-2]) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    # all input points collinear: extremes are the lexicographic ends
    return hull if len(hull) >= 3 else [pts[0], pts[-1]]


def point_in_hull(p: Point, hull: Sequence[Point]) -> bool:
    """Closed containment of p in the convex polygon/segment/point `hull`."""
    if len(hull) == 0:
        return False
    if len(hull) == 1:
        return p == hull[0]
    if len(hull) == 2:
        a, b = hull
        if cross(b - a, p - a) != 0:
            return False
        t = dot(p - a, b - a)
        return 0 <= t <= dot(b - a, b - a)
    n = len(hull)
    for i in range(n):
        a, b = hull[i], hull[(i + 1) % n]
        if cross(b - a, p - a) < 0:
            return False
    return True


# ---------------------------------------------------------------------------
# exact feasibility of open half-plane systems


def _pair_cone_dirs(u: Direction, w: Direction) -> list[Direction]:
    """Interior directions of the four cones cut by two non-parallel lines
    with normals u and w: one per sign combination of ((u,d), (w,d))."""
    out = []
    for su in (1, -1):
        for sw in (1, -1):
            nu = u.scale(Fraction(su))
            nw = w.scale(Fraction(sw))
            d1 = nu.perp()
            if dot(nw, d1) < 0:
                d1 = -d1
            d2 = nw.perp()
            if dot(nu, d2) < 0:
                d2 = -d2
            out.append(d1 + d2)
    return out


def find_interior_point(halfplanes: Sequence[HalfPlane]) -> Optional[Point]:
    """Exact witness of the open region ∩ {(c_j, x) > b_j}, or None.

    Complete by a standard argument: a nonempty open polyhedral region whose
    closure has an extreme point has one at the crossing of two non-parallel
    tight borders, and the tangent cone there is exactly the pair cone of
    those two lines, so perturbing the crossing along a pair-cone interior
    direction lands inside; a region whose closure has no extreme point
    contains a full line, which forces all normals parallel, and that case
    is one-dimensional.
    """
    hps = list(halfplanes)
    if not hps:
        return ORIGIN
    base = hps[0].normal
    if all(cross(hp.normal, base) == 0 for hp in hps):
        # all borders parallel: solve along the normal direction
        lo: Optional[Rat] = None
        hi: Optional[Rat] = None
        for hp in hps:
            a = dot(hp.normal, base)
            assert a != 0
            t = hp.b / a
            if a > 0:
                lo = t if lo is None else max(lo, t)
            else:
                hi = t if hi is None else min(hi, t)
        if lo is not None and hi is not None and lo >= hi:
            return None
        if lo is None and hi is None:
            t0 = Fraction(0)
        elif lo is None:
            t0 = hi - 1
        elif hi is None:
            t0 = lo + 1
        else:
            t0 = (lo + hi) / 2
        return ORIGIN + base.scale(t0)

    n = len(hps)
    for i in range(n):
        for j in range(i + 1, n):
            li, lj = hps[i].border(), hps[j].border()
            v = line_intersect(li, lj)
            if not isinstance(v, Point):
                continue
            for d in _pair_cone_dirs(hps[i].normal, hps[j].normal):
                pp = PerturbedPoint(v, d)
                if all(side_of_perturbed(hp, pp) == Side.INSIDE for hp in hps):
                    return materialize(pp, hps)
    return None


def feasible_on_line(halfplanes: Sequence[HalfPlane], l: Line) -> Optional[Point]:
    """Exact witness of ∩ {(c_j, x) > b_j} restricted to the line l, or None."""
    u = l.direction()
    p0 = l.anchor()
    lo: Optional[Rat] = None
    hi: Optional[Rat] = None
    for hp in halfplanes:
        a = dot(hp.normal, u)
        v0 = hp.value_at(p0)
        if a == 0:
            if v0 <= 0:
                return None
            continue
        t = -v0 / a
        if a > 0:
            lo = t if lo is None else max(lo, t)
        else:
            hi = t if hi is None else min(hi, t)
    if lo is not None and hi is not None and lo >= hi:
        return None
    if lo is None and hi is None:
        t0 = Fraction(0)
    elif lo is None:
        t0 = hi - 1
    elif hi is None:
        t0 = lo + 1
    else:
        t0 = (lo + hi) / 2
    return l.point_at(t0)


def is_consistent(halfplanes: Sequence[HalfPlane]) -> bool:
    return find_interior_point(halfplanes) is not None
