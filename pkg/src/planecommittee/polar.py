"""Systems of strict linear inequalities in the plane and their polar
colored-point form.

An inequality (c, x) > b with b != (c, z) maps, relative to an origin z, to
the point z + c/(b - (c, z)): black when z is outside the half-plane, red
when z is inside. The origin itself joins the red class. Separating-line
votes on the colored points mirror inequality satisfaction exactly, which is
what the committee machinery runs on.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    DuplicateInequalityError,
    EmptyCommitteeError,
    EmptyInputError,
    InputError,
    MemberEqualsOriginError,
    OriginInClosureError,
    OriginOnBoundaryError,
    ZeroNormalError,
    ZeroPointError,
)
from .geometry import (
    Direction,
    HalfPlane,
    Line,
    Point,
    convex_hull,
    cross,
    dot,
    point_in_hull,
)

Rat = Fraction


@dataclass(frozen=True)
class Inequality:
    """Linear inequality (c, x) > b (or >= when strict is False)."""

    cx: Rat
    cy: Rat
    b: Rat
    strict: bool = True

    def __post_init__(self):
        if self.cx == 0 and self.cy == 0:
            raise ZeroNormalError("inequality with zero normal")

    @property
    def normal(self) -> Direction:
        return Direction(self.cx, self.cy)

    def halfplane(self) -> HalfPlane:
        return HalfPlane(self.cx, self.cy, self.b)

    def border(self) -> Line:
        return Line(self.cx, self.cy, self.b)

    def value_at(self, p: Point) -> Rat:
        return self.cx * p.x + self.cy * p.y - self.b

    def satisfied_at(self, p: Point) -> bool:
        v = self.value_at(p)
        return v > 0 if self.strict else v >= 0

    def scale_key(self) -> tuple:
        """Canonical form under positive scaling of (c, b)."""
        s = abs(self.cx) if self.cx != 0 else abs(self.cy)
        return (self.cx / s, self.cy / s, self.b / s)


@dataclass(frozen=True)
class System:
    """Indexed system of inequalities. Indices are 1-based everywhere."""

    inequalities: tuple[Inequality, ...]

    def __post_init__(self):
        if len(self.inequalities) == 0:
            raise EmptyInputError("system needs at least one inequality")
        seen: dict[tuple, int] = {}
        for i, ineq in enumerate(self.inequalities, start=1):
            key = ineq.scale_key()
            if key in seen:
                raise DuplicateInequalityError(
                    f"inequalities {seen[key]} and {i} are identical",
                    i=seen[key],
                    j=i,
                )
            seen[key] = i

    @property
    def m(self) -> int:
        return len(self.inequalities)

    def indices(self) -> range:
        return range(1, self.m + 1)

    def ineq(self, i: int) -> Inequality:
        assert 1 <= i <= self.m, f"index {i} out of range 1..{self.m}"
        return self.inequalities[i - 1]

    def halfplane(self, i: int) -> HalfPlane:
        return self.ineq(i).halfplane()

    def border(self, i: int) -> Line:
        return self.ineq(i).border()

    def halfplanes(self) -> list[HalfPlane]:
        return [q.halfplane() for q in self.inequalities]

    def subsystem(self, idxs: Sequence[int]) -> "System":
        """New 1-based system from the given original indices, in order."""
        return System(tuple(self.ineq(i) for i in idxs))

    def translate(self, z: Point) -> "System":
        """Same inequalities in coordinates centered at z: b' = b - (c, z)."""
        return System(
            tuple(
                Inequality(q.cx, q.cy, q.b - (q.cx * z.x + q.cy * z.y), q.strict)
                for q in self.inequalities
            )
        )


def pairwise_inconsistent_pair(sys: System) -> Optional[tuple[int, int]]:
    """First index pair (i, j) whose two open half-planes are disjoint.

    Two open half-planes are disjoint iff their normals are opposite
    (c_j = -mu * c_i, mu > 0) and mu*b_i + b_j >= 0.
    """
    for i in sys.indices():
        qi = sys.ineq(i)
        for j in range(i + 1, sys.m + 1):
            qj = sys.ineq(j)
            if cross(qi.normal, qj.normal) != 0 or dot(qi.normal, qj.normal) >= 0:
                continue
            mu = -(qj.cx / qi.cx) if qi.cx != 0 else -(qj.cy / qi.cy)
            assert mu > 0
            if mu * qi.b + qj.b >= 0:
                return (i, j)
    return None


class Color(Enum):
    BLACK = "black"
    RED = "red"


@dataclass(frozen=True)
class ColoredPoint:
    pos: Point
    color: Color
    source: Optional[int]  # inequality index, None for the origin marker


@dataclass(frozen=True)
class ColoredPointSystem:
    origin_z: Point
    A: tuple[ColoredPoint, ...]  # black
    B: tuple[ColoredPoint, ...]  # red, origin marker last

    def all_points(self) -> tuple[ColoredPoint, ...]:
        return self.A + self.B

    def by_source(self, j: int) -> ColoredPoint:
        for d in self.all_points():
            if d.source == j:
                return d
        raise KeyError(j)


def polar_point(c: Point) -> Point:
    """Inversion in the unit circle: c / |c|^2. Involutive."""
    n2 = c.x * c.x + c.y * c.y
    if n2 == 0:
        raise ZeroPointError("polar of the zero point is undefined")
    return Point(c.x / n2, c.y / n2)


def point_system_of(sys: System, z: Point) -> ColoredPointSystem:
    """Colored point system of `sys` relative to origin z.

    Inequality j contributes z + c_j/(b_j - (c_j, z)): black when z violates
    it, red when z satisfies it. z itself is adjoined red with source None.
    """
    blacks: list[ColoredPoint] = []
    reds: list[ColoredPoint] = []
    for j in sys.indices():
        q = sys.ineq(j)
        s = -q.value_at(z)  # b - (c, z)
        if s == 0:
            raise OriginOnBoundaryError(
                f"origin lies on the border of inequality {j}", j=j
            )
        pos = z + q.normal.scale(1 / s)
        if s > 0:
            blacks.append(ColoredPoint(pos, Color.BLACK, j))
        else:
            reds.append(ColoredPoint(pos, Color.RED, j))
    reds.append(ColoredPoint(z, Color.RED, None))
    return ColoredPointSystem(z, tuple(blacks), tuple(reds))


def votes_for(P: HalfPlane, d: ColoredPoint, z: Point) -> bool:
    """Whether the open half-plane P (with z outside its closure) votes for
    the colored point d: black points need to be inside, red points need to
    be outside the closure."""
    if P.value_at(z) >= 0:
        raise OriginInClosureError("half-plane closure contains the origin")
    v = P.value_at(d.pos)
    return v > 0 if d.color is Color.BLACK else v < 0


def check_solution(sys: System, x0: Point) -> bool:
    """Direct evaluation: every inequality holds at x0 (strict per flag)."""
    return all(q.satisfied_at(x0) for q in sys.inequalities)


def check_solution_polar(sys: System, x0: Point, z: Point) -> bool:
    """Same predicate, evaluated through the colored point system at z.

    Inequality j holds at x0 iff the line {x : (x0-z, x-z) = 1} puts the
    j-th colored point on its black side: (x0-z, d_j-z) > 1 for black points
    and < 1 for red ones (with equality allowed for non-strict inequalities).
    """
    ps = point_system_of(sys, z)
    u = x0 - z
    for j in sys.indices():
        d = ps.by_source(j)
        r = dot(u, d.pos - z)
        if d.color is Color.BLACK:
            ok = r > 1 if sys.ineq(j).strict else r >= 1
        else:
            ok = r < 1 if sys.ineq(j).strict else r <= 1
        if not ok:
            return False
    return True


@dataclass(frozen=True)
class Committee:
    """Finite multiset of plane points, stored sorted for canonical form."""

    members: tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "members", tuple(sorted(self.members, key=lambda p: p.key()))
        )

    @property
    def size(self) -> int:
        return len(self.members)

    def with_multiplicity(self) -> list[tuple[Point, int]]:
        out: list[tuple[Point, int]] = []
        for p in self.members:
            if out and out[-1][0] == p:
                out[-1] = (p, out[-1][1] + 1)
            else:
                out.append((p, 1))
        return out


@dataclass(frozen=True)
class HalfPlaneCommittee:
    members: tuple[HalfPlane, ...]
    origin_z: Point

    @property
    def size(self) -> int:
        return len(self.members)


def committee_to_halfplanes(K: Committee, z: Point) -> HalfPlaneCommittee:
    """Member x maps to the open half-plane {x' : (x - z, x' - z) > 1},
    whose closure never contains z."""
    hps = []
    for x in K.members:
        if x == z:
            raise MemberEqualsOriginError("committee member equals the origin")
        c = x - z
        b = 1 + c.dx * z.x + c.dy * z.y
        hps.append(HalfPlane(c.dx, c.dy, b))
    return HalfPlaneCommittee(tuple(hps), z)


def halfplanes_to_committee(Kstar: HalfPlaneCommittee) -> Committee:
    """Exact inverse of committee_to_halfplanes."""
    z = Kstar.origin_z
    members = []
    for P in Kstar.members:
        c = P.normal
        expected_b = 1 + c.dx * z.x + c.dy * z.y
        if P.b != expected_b:
            raise InputError(
                "half-plane is not the image of a committee member at this origin"
            )
        members.append(z + c)
    return Committee(tuple(members))


def verify_point_committee(
    ps: ColoredPointSystem, Kstar: HalfPlaneCommittee
) -> tuple[bool, list[tuple[ColoredPoint, int]]]:
    """Majority vote check: every colored point, origin included, must
    collect strictly more than half of the members' votes."""
    if Kstar.size == 0:
        raise EmptyCommitteeError("committee has no members")
    z = ps.origin_z
    counts = []
    ok = True
    for d in ps.all_points():
        n = sum(1 for P in Kstar.members if votes_for(P, d, z))
        counts.append((d, n))
        if 2 * n <= Kstar.size:
            ok = False
    return ok, counts


def separation_to_system(
    A: Sequence[Point], B: Sequence[Point], z: Point
) -> System:
    """System over h whose solutions are normals of lines strictly
    separating A from B ∪ {z} (in coordinates centered at z):
    (a - z, h) > 1 for a in A and (b - z, h) < 1 for b in B, the latter
    stored as (z - b, h) > -1."""
    ineqs: list[Inequality] = []
    for a in A:
        if a == z:
            raise InputError("separation point coincides with the origin")
        c = a - z
        ineqs.append(Inequality(c.dx, c.dy, Fraction(1)))
    for b in B:
        if b == z:
            raise InputError("separation point coincides with the origin")
        c = z - b
        ineqs.append(Inequality(c.dx, c.dy, Fraction(-1)))
    return System(tuple(ineqs))


@dataclass(frozen=True)
class Prop14Report:
    a_in_conv_b: bool
    b_in_conv_az: bool


def check_prop14(ps: ColoredPointSystem, sys: System) -> Prop14Report:
    """Closed-hull containments between the color classes: whether every
    black point lies in conv(red) and whether every red point lies in
    conv(black ∪ {origin})."""
    a_pts = [d.pos for d in ps.A]
    b_pts = [d.pos for d in ps.B]
    hull_b = convex_hull(b_pts)
    hull_az = convex_hull(a_pts + [ps.origin_z])
    a_in_b = all(point_in_hull(p, hull_b) for p in a_pts)
    b_in_az = all(point_in_hull(p, hull_az) for p in b_pts)
    return Prop14Report(a_in_b, b_in_az)
