"""Minimal committees for systems whose borders bound a convex polygon.

When the border lines of an inconsistent system bound a convex region with
one side per line, a minimal committee can be constructed directly instead
of searched for:

1. pick an interior point of that region and use it as the working origin;
2. for every inequality whose half-plane avoids the origin, append a deeper
   parallel copy whose border slices one vertex (or a vertex-free unbounded
   piece) off the region, producing a bounded polygon with one extra side
   per appended inequality and the origin still interior;
3. at every polygon vertex where an origin-avoiding side meets an
   origin-containing side, chase the common ray of all half-planes that
   contain it to its farthest vertex and perturb into the final cone there;
4. deduplicate those perturbed points: they form a minimal committee of the
   original system.

``augment_polygon_system`` performs steps 1-2 and returns the plan so far;
``polygon_minimal_committee`` runs all four steps.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    ConsistentSystemError,
    NotAPolygonError,
    PairwiseInconsistentError,
)
from .geometry import (
    ORIGIN,
    Direction,
    HalfPlane,
    PerturbedPoint,
    Point,
    Ray,
    Side,
    _pair_cone_dirs,
    cross,
    dot,
    feasible_on_line,
    find_interior_point,
    halfplane_cap_line,
    line_intersect,
    materialize,
    side_of_perturbed,
)
from .mcs import _is_codirectional_trace, homogeneous_mcs_enumeration
from .oracle import verify_committee
from .polar import Committee, Inequality, System, pairwise_inconsistent_pair

Rat = Fraction


@dataclass(frozen=True)
class PolygonPlan:
    """Everything the polygon construction produced, in input coordinates.

    ``augment_polygon_system`` fills the geometric half (``m`` .. ``k1``);
    ``polygon_minimal_committee`` fills the rest. ``pairs`` holds 1-based
    indices into ``augmented``: per qualified polygon vertex, the inequality
    whose half-plane avoids the working origin and the one containing it.
    ``ray_vertices`` has one entry per pair (repeats preserved);
    ``distinct_ray_vertices`` keeps first occurrences, one committee member
    each.
    """

    m: int
    z: Point
    k1: int
    augmented: System
    vertices: tuple[Point, ...]
    pairs: Optional[tuple[tuple[int, int], ...]] = None
    ray_vertices: Optional[tuple[Point, ...]] = None
    distinct_ray_vertices: Optional[tuple[Point, ...]] = None
    q0: Optional[int] = None
    committee: Optional[Committee] = None

    @property
    def p(self) -> Optional[int]:
        return None if self.pairs is None else len(self.pairs)


# ---------------------------------------------------------------------------
# region bookkeeping: a region is an intersection of closed half-planes,
# described by the inequalities plus a side vector sigma (+1 keeps an
# inequality's own side, -1 the complement side).


def _origin_sigma(ineqs: Sequence[Inequality]) -> list[int]:
    """Sides putting the origin inside the region's interior."""
    sig = []
    for q in ineqs:
        assert q.b != 0, "working origin must not lie on a border"
        sig.append(1 if q.b < 0 else -1)
    return sig


def _open_halfplanes(
    ineqs: Sequence[Inequality], sigma: Sequence[int]
) -> list[HalfPlane]:
    """Open half-planes whose intersection is the region's interior."""
    return [
        HalfPlane(s * q.cx, s * q.cy, s * q.b) for s, q in zip(sigma, ineqs)
    ]


def _hosts_all_sides(
    ineqs: Sequence[Inequality], sigma: Sequence[int]
) -> bool:
    """True when every border contributes a positive-length side."""
    hps = _open_halfplanes(ineqs, sigma)
    for t, q in enumerate(ineqs):
        others = [h for u, h in enumerate(hps) if u != t]
        if feasible_on_line(others, q.border()) is None:
            return False
    return True


def _region_vertices(
    ineqs: Sequence[Inequality], sigma: Sequence[int]
) -> list[Point]:
    """Corner points: border crossings on the closed region."""
    out: list[Point] = []
    seen: set[tuple] = set()
    n = len(ineqs)
    for i in range(n):
        for j in range(i + 1, n):
            x = line_intersect(ineqs[i].border(), ineqs[j].border())
            if not isinstance(x, Point):
                continue
            if x.key() in seen:
                continue
            if all(
                s * q.value_at(x) >= 0 for s, q in zip(sigma, ineqs)
            ):
                seen.add(x.key())
                out.append(x)
    return out


def _recession_dirs(
    ineqs: Sequence[Inequality], sigma: Sequence[int]
) -> list[Direction]:
    """Extreme directions the closed region recedes along (exhaustive: any
    nonzero recession direction is a nonnegative combination of border
    directions satisfying every homogeneous constraint)."""
    normals = [
        q.normal.scale(Fraction(s)) for s, q in zip(sigma, ineqs)
    ]
    out: list[Direction] = []
    for n in normals:
        for d in (n.perp(), -n.perp()):
            nd = d.normalized()
            if nd in out:
                continue
            if all(dot(n2, nd) >= 0 for n2 in normals):
                out.append(nd)
    return out


# ---------------------------------------------------------------------------
# detection: find the cell of the border-line arrangement that has one side
# on every border, and a point strictly inside it


def _cell_signature(sys: System, w: Point) -> tuple[int, ...]:
    sig = []
    for q in sys.inequalities:
        v = q.value_at(w)
        assert v != 0, "candidate interior point lies on a border"
        sig.append(1 if v > 0 else -1)
    return tuple(sig)


def _cell_candidates(sys: System) -> list[Point]:
    """One interior point for (at least) every full-sided cell: perturb each
    pair of crossing borders into the four cones they cut."""
    hps = sys.halfplanes()
    out: list[Point] = []
    n = sys.m
    for i in range(n):
        for j in range(i + 1, n):
            x = line_intersect(hps[i].border(), hps[j].border())
            if not isinstance(x, Point):
                continue
            for d in _pair_cone_dirs(hps[i].normal, hps[j].normal):
                pp = PerturbedPoint(x, d)
                if any(side_of_perturbed(h, pp) is Side.BOUNDARY for h in hps):
                    continue
                out.append(materialize(pp, hps))
    return out


def _detect_polygon(sys: System) -> Point:
    """An interior point of the full-sided cell, preferring the origin's own
    cell, then bounded cells, then the smallest cell signature."""
    ineqs = sys.inequalities
    if all(q.b != 0 for q in ineqs):
        sig0 = _cell_signature(sys, ORIGIN)
        if _hosts_all_sides(ineqs, sig0):
            return ORIGIN

    best: Optional[tuple[tuple, Point]] = None
    seen: set[tuple[int, ...]] = set()
    for w in _cell_candidates(sys):
        sig = _cell_signature(sys, w)
        if sig in seen:
            continue
        seen.add(sig)
        if not _hosts_all_sides(ineqs, sig):
            continue
        bounded = len(_recession_dirs(ineqs, sig)) == 0
        key = (0 if bounded else 1, sig)
        if best is None or key < best[0]:
            best = (key, w)
    if best is None:
        raise NotAPolygonError(
            "the border lines bound no region with one side per line"
        )
    return best[1]


def _check_preconditions(sys: System) -> None:
    if sys.m < 3:
        raise NotAPolygonError(
            f"{sys.m} border lines cannot bound a polygon", m=sys.m
        )
    for i in range(sys.m):
        for j in range(i + 1, sys.m):
            ci = sys.inequalities[i].normal
            cj = sys.inequalities[j].normal
            if cross(ci, cj) == 0 and dot(ci, cj) > 0:
                raise NotAPolygonError(
                    f"borders {i + 1} and {j + 1} are parallel with "
                    "identically oriented normals",
                    i=i + 1,
                    j=j + 1,
                )
    clash = pairwise_inconsistent_pair(sys)
    if clash is not None:
        raise PairwiseInconsistentError(
            f"inequalities {clash[0]} and {clash[1]} are already "
            "inconsistent, so no committee exists",
            i=clash[0],
            j=clash[1],
        )
    if find_interior_point(sys.halfplanes()) is not None:
        raise ConsistentSystemError(
            "system is consistent; a one-point committee solves it"
        )


# ---------------------------------------------------------------------------
# augmentation: slice off the region's far vertex along every
# origin-avoiding inequality


def _unbounded_below(ineqs: Sequence[Inequality], c: Direction) -> bool:
    sigma = _origin_sigma(ineqs)
    return any(dot(c, d) < 0 for d in _recession_dirs(ineqs, sigma))


def _cut_offset(ineqs: Sequence[Inequality], q: Inequality) -> Rat:
    """Offset for the deeper parallel copy of ``q``: strictly negative,
    strictly between the smallest vertex value of ``q``'s normal on the
    region and everything else, so the new border removes exactly the
    minimizing vertex (or, on a region receding against the normal, a
    vertex-free unbounded piece)."""
    verts = _region_vertices(ineqs, _origin_sigma(ineqs))
    assert verts, "region must have at least one corner"
    c = q.normal
    values = [dot(c, Direction(v.x, v.y)) for v in verts]
    vmin = min(values)

    if _unbounded_below(ineqs, c):
        return min(vmin, Fraction(0)) - 1

    assert vmin < 0, "far vertex must lie beyond the working origin"
    assert values.count(vmin) == 1, "minimizing corner must be unique"
    distinct = sorted(set(values))
    mid = (distinct[0] + distinct[1]) / 2 if len(distinct) >= 2 else vmin / 2
    if mid >= 0:
        mid = vmin / 2
    assert vmin < mid < 0
    assert len(distinct) < 2 or mid < distinct[1]
    return mid


def _augment(ineqs: list[Inequality]) -> tuple[list[Inequality], int]:
    """Append one deeper parallel copy per origin-avoiding inequality, in
    index order. Returns the grown list and the number of copies."""
    avoiding = [q for q in ineqs if q.b > 0]
    assert len(avoiding) >= 2, "an inconsistent system avoids the origin twice"
    cur = list(ineqs)
    for q in avoiding:
        b_new = _cut_offset(cur, q)
        cur.append(Inequality(q.cx, q.cy, b_new, q.strict))
        assert _hosts_all_sides(
            cur, _origin_sigma(cur)
        ), "every border must still host a side"
    assert (
        len(_recession_dirs(cur, _origin_sigma(cur))) == 0
    ), "augmented region must be bounded"
    return cur, len(avoiding)


# ---------------------------------------------------------------------------
# polygon walk: sides, vertices, qualified vertex pairs


def _side_endpoints(ineqs: Sequence[Inequality], t: int) -> tuple[Point, Point]:
    """Both endpoints of the polygon side on border ``t`` (0-based); the
    region must be bounded with a positive-length side there."""
    sigma = _origin_sigma(ineqs)
    line = ineqs[t].border()
    u = line.direction()
    p0 = line.anchor()
    lo: Optional[Rat] = None
    hi: Optional[Rat] = None
    for k, q in enumerate(ineqs):
        if k == t:
            continue
        s = sigma[k]
        a = s * dot(q.normal, u)
        v0 = s * q.value_at(p0)
        if a == 0:
            assert v0 >= 0, "border misses the region"
            continue
        bound = -v0 / a
        if a > 0:
            lo = bound if lo is None else max(lo, bound)
        else:
            hi = bound if hi is None else min(hi, bound)
    assert lo is not None and hi is not None, "side must be a segment"
    assert lo < hi, "side must have positive length"
    return line.point_at(lo), line.point_at(hi)


def _angular_point_cmp(p: Point, q: Point) -> int:
    """Counterclockwise comparison of directions from the origin, starting
    at the positive x-axis (the origin is interior, so no ties occur)."""
    a = Direction(p.x, p.y)
    b = Direction(q.x, q.y)

    def half(d: Direction) -> int:
        return 0 if (d.dy > 0 or (d.dy == 0 and d.dx > 0)) else 1

    ha, hb = half(a), half(b)
    if ha != hb:
        return ha - hb
    cr = cross(a, b)
    assert cr != 0, "polygon vertices must not align with the origin"
    return -1 if cr > 0 else 1


def _polygon_vertices(
    ineqs: Sequence[Inequality],
) -> list[tuple[Point, tuple[int, int]]]:
    """Vertices of the bounded region in counterclockwise order, each with
    the 1-based indices of its two incident sides."""
    incident: dict[tuple, tuple[Point, list[int]]] = {}
    for t in range(len(ineqs)):
        for pt in _side_endpoints(ineqs, t):
            incident.setdefault(pt.key(), (pt, []))[1].append(t + 1)
    verts = []
    for pt, lines in incident.values():
        assert len(lines) == 2, "exactly two sides meet at each vertex"
        verts.append((pt, (min(lines), max(lines))))
    assert len(verts) == len(ineqs), "vertex count must equal side count"
    verts.sort(
        key=functools.cmp_to_key(lambda a, b: _angular_point_cmp(a[0], b[0]))
    )
    return verts


def _qualified_pairs(
    ineqs: Sequence[Inequality],
    verts: Sequence[tuple[Point, tuple[int, int]]],
) -> list[tuple[Point, int, int]]:
    """Vertices joining an origin-avoiding side with an origin-containing
    one, as (vertex, avoiding index, containing index)."""
    out = []
    for pt, (s, t) in verts:
        bs = ineqs[s - 1].b
        bt = ineqs[t - 1].b
        if (bs > 0) == (bt > 0):
            continue
        avoiding, containing = (s, t) if bs > 0 else (t, s)
        out.append((pt, avoiding, containing))
    return out


# ---------------------------------------------------------------------------
# committee members: chase each qualified vertex's common ray to its far end


def _pair_member(
    aug: System, vertex: Point, avoiding: int, containing: int
) -> tuple[Point, PerturbedPoint]:
    """The far vertex of the common ray of all half-planes containing the
    qualified ray, and the perturbed point just inside the final cone."""
    l1 = aug.border(avoiding)
    r = halfplane_cap_line(aug.halfplane(containing), l1)
    assert isinstance(r, Ray) and r.vertex == vertex

    ray_members: list[tuple[int, Point]] = []
    for k in aug.indices():
        if k == avoiding:
            continue
        cls = _is_codirectional_trace(aug.halfplane(k), l1, r.dir)
        if cls is not None and cls[0] == "ray":
            ray_members.append((k, cls[1]))
    assert ray_members, "the containing half-plane always advances the ray"

    far = max(dot(v - vertex, r.dir) for _, v in ray_members)
    tied = [(k, v) for k, v in ray_members if dot(v - vertex, r.dir) == far]
    h = tied[0][1]

    winner_dir: Optional[Direction] = None
    for k, _ in tied:
        capk = halfplane_cap_line(aug.halfplane(avoiding), aug.border(k))
        assert isinstance(capk, Ray) and capk.vertex == h
        if all(dot(aug.halfplane(t).normal, capk.dir) >= 0 for t, _ in tied):
            assert winner_dir is None, "tied cones must nest"
            winner_dir = capk.dir
    assert winner_dir is not None, "one trace cone must lie inside the others"

    return h, PerturbedPoint(h, r.dir + winner_dir)


# ---------------------------------------------------------------------------
# public operations


def _prepare(sys: System) -> tuple[Point, System, list[Inequality], int]:
    """Shared front half: preconditions, interior point, translation to the
    working origin, augmentation. Returns (interior point, translated
    system, augmented inequality list, number of appended copies)."""
    _check_preconditions(sys)
    z = _detect_polygon(sys)
    sys_t = sys.translate(z)
    aug, k1 = _augment(list(sys_t.inequalities))
    return z, sys_t, aug, k1


def _shift(p: Point, z: Point) -> Point:
    return Point(p.x + z.x, p.y + z.y)


def augment_polygon_system(sys: System) -> PolygonPlan:
    """Geometric half of the polygon construction: locate the full-sided
    cell of the border arrangement, move the working origin inside it, and
    append one deeper parallel copy of every origin-avoiding inequality so
    the region becomes a bounded polygon with one extra side per copy.

    Returns a partial plan: system data plus the polygon, no committee.
    """
    z, _, aug, k1 = _prepare(sys)
    verts = _polygon_vertices(aug)
    aug_sys = System(tuple(aug)).translate(Point(-z.x, -z.y))
    assert aug_sys.inequalities[: sys.m] == sys.inequalities
    return PolygonPlan(
        m=sys.m,
        z=z,
        k1=k1,
        augmented=aug_sys,
        vertices=tuple(_shift(pt, z) for pt, _ in verts),
    )


def polygon_minimal_committee(sys: System) -> tuple[Committee, PolygonPlan]:
    """Construct a minimal committee of a system whose borders bound a
    convex polygon (one side per line), by the vertex-slicing construction.

    The committee size always equals the number of qualified polygon
    vertices minus the committee size of the origin-avoiding subsystem's
    directional relaxation.
    """
    z, sys_t, aug, k1 = _prepare(sys)
    aug_sys_t = System(tuple(aug))
    verts = _polygon_vertices(aug)
    pairs = _qualified_pairs(aug, verts)

    ray_vertices: list[Point] = []
    members: list[Point] = []
    distinct: list[Point] = []
    seen: set[tuple] = set()
    hps = aug_sys_t.halfplanes()
    for vertex, avoiding, containing in pairs:
        h, pp = _pair_member(aug_sys_t, vertex, avoiding, containing)
        ray_vertices.append(h)
        if h.key() in seen:
            continue
        seen.add(h.key())
        distinct.append(h)
        members.append(materialize(pp, hps))

    avoiding_normals = [(q.cx, q.cy) for q in sys_t.inequalities if q.b > 0]
    q0 = len(homogeneous_mcs_enumeration(avoiding_normals))
    assert len(distinct) == len(pairs) - q0, (
        "distinct ray vertices must number qualified pairs minus the "
        "directional committee size"
    )

    committee_t = Committee(tuple(members))
    ok_aug, votes_aug = verify_committee(aug_sys_t, committee_t)
    assert ok_aug, f"committee must solve the augmented system: {votes_aug}"
    ok_t, votes_t = verify_committee(sys_t, committee_t)
    assert ok_t, f"committee must solve the translated system: {votes_t}"

    committee = Committee(tuple(_shift(p, z) for p in members))
    ok, votes = verify_committee(sys, committee)
    assert ok, f"committee must solve the input system: {votes}"

    plan = PolygonPlan(
        m=sys.m,
        z=z,
        k1=k1,
        augmented=aug_sys_t.translate(Point(-z.x, -z.y)),
        vertices=tuple(_shift(pt, z) for pt, _ in verts),
        pairs=tuple((a, c) for _, a, c in pairs),
        ray_vertices=tuple(_shift(h, z) for h in ray_vertices),
        distinct_ray_vertices=tuple(_shift(h, z) for h in distinct),
        q0=q0,
        committee=committee,
    )
    return committee, plan
