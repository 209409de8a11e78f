"""Marked maximal-consistent-subsystem machinery.

The core is a vertex-walking procedure on the border arrangement: starting
from a half-plane and a ray on its border, repeatedly intersect the traces
of all half-planes that meet the current ray in a ray, move to the farthest
trace vertex, and hand the walk to the half-plane whose cone at that vertex
is contained in all the others. The walk stalls on a repeated vertex, and
the two half-planes of the final step determine a marked maximal consistent
subsystem witnessed by a symbolic perturbation of the stall vertex.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import (
    ConsistentSystemError,
    DuplicateInequalityError,
    EmptyInputError,
    InconsistentError,
    InconsistentSeedError,
    InputError,
    InternalError,
    PairwiseInconsistentError,
    ParallelBordersError,
    RankDeficientError,
    ZeroNormalError,
)
from .geometry import (
    Direction,
    FullLine,
    HalfPlane,
    Line,
    PerturbedPoint,
    Point,
    Ray,
    Side,
    angular_sort,
    cross,
    dot,
    find_interior_point,
    halfplane_cap_line,
    line_intersect,
    same_direction,
    side_of,
    side_of_perturbed,
)
from .polar import System, pairwise_inconsistent_pair

Rat = Fraction


@dataclass(frozen=True)
class MarkedMcs:
    members: tuple[int, ...]           # sorted 1-based index set T
    determining_pair: tuple[int, int]  # (i, j), i < j, both in members
    witness: PerturbedPoint


@dataclass(frozen=True)
class ProcedureTrace:
    halfplanes: tuple[int, ...]   # visited inequality indices, 1-based
    vertices: tuple[Point, ...]   # walk vertices; last two coincide
    rays: tuple[Ray, ...]         # rays used, one per step
    k0: int


@dataclass(frozen=True)
class McsSet:
    members: tuple[int, ...]  # sorted 1-based index set
    witness: Union[Point, PerturbedPoint, Direction]


def _is_codirectional_trace(hp: HalfPlane, line: Line, ray_dir: Direction):
    """Classify hp's trace on `line` against a ray of direction ray_dir on
    that line. Returns ("full", None), ("ray", vertex), or None. The trace
    meets every ray of that direction in a ray exactly in the first two
    cases, independent of the ray's vertex."""
    cap = halfplane_cap_line(hp, line)
    if isinstance(cap, FullLine):
        return ("full", None)
    if isinstance(cap, Ray) and same_direction(cap.dir, ray_dir):
        return ("ray", cap.vertex)
    return None


def _run_procedure(
    hps: Sequence[HalfPlane], start: int, ray_dir: Direction, ray_vertex: Point
) -> tuple[tuple[int, int], PerturbedPoint, ProcedureTrace]:
    """The walk itself, over 0-based half-plane positions.

    Returns ((a, b), h_bar, trace): a, b are the positions of the last two
    half-planes, h_bar the perturbed stall vertex interior to their cone.
    """
    cur = start
    cur_line = hps[cur].border()
    d = ray_dir
    idx_seq = [cur]
    vertices: list[Point] = []
    rays: list[Ray] = [Ray(ray_vertex, ray_dir)]

    for _ in range(len(hps) + 3):
        ray_members: list[tuple[int, Point]] = []
        for k, hp in enumerate(hps):
            r = _is_codirectional_trace(hp, cur_line, d)
            if r is not None and r[0] == "ray":
                ray_members.append((k, r[1]))
        if not ray_members:
            raise InternalError("procedure found no advancing trace")

        # farthest trace vertex along the ray
        best = max(ray_members, key=lambda kv: (dot(kv[1] - ray_vertex, d)))
        vstar = best[1]
        family2 = [k for k, v in ray_members if v == vstar]

        # the member whose cone at vstar sits inside all the others: all
        # borders here pass through vstar, so containment is a sign test on
        # the trace direction of the current half-plane on each border
        winner = None
        win_dir: Optional[Direction] = None
        for k in family2:
            capk = halfplane_cap_line(hps[cur], hps[k].border())
            assert isinstance(capk, Ray) and capk.vertex == vstar
            vk = capk.dir
            if all(dot(hps[t].normal, vk) >= 0 for t in family2):
                if winner is not None:
                    raise InternalError("cone minimization tie")
                winner, win_dir = k, vk
        if winner is None:
            raise InternalError("cone minimization found no minimum")

        vertices.append(vstar)
        idx_seq.append(winner)
        if len(vertices) >= 2 and vertices[-1] == vertices[-2]:
            hbar = PerturbedPoint(vstar, d + win_dir)
            trace = ProcedureTrace(
                tuple(i + 1 for i in idx_seq),
                tuple(vertices),
                tuple(rays),
                len(vertices),
            )
            return (cur, winner), hbar, trace

        rays.append(Ray(vstar, win_dir))
        cur = winner
        cur_line = hps[cur].border()
        d = win_dir
        ray_vertex = vstar

    raise InternalError("procedure exceeded its step bound")


def canonical_rays(sys: System, start: int) -> list[Ray]:
    """The admissible starting rays on the border of inequality `start`:
    from each extreme border-crossing point, outward through the other one."""
    l0 = sys.border(start)
    params = []
    for j in sys.indices():
        if j == start:
            continue
        v = line_intersect(l0, sys.border(j))
        if isinstance(v, Point):
            params.append(l0.param_of(v))
    if not params:
        raise RankDeficientError(
            f"border of inequality {start} crosses no other border"
        )
    u = l0.direction()
    lo, hi = min(params), max(params)
    return [Ray(l0.point_at(lo), u), Ray(l0.point_at(hi), -u)]


def _check_marked_preconditions(sys: System) -> None:
    bad = pairwise_inconsistent_pair(sys)
    if bad is not None:
        raise PairwiseInconsistentError(
            f"inequalities {bad[0]} and {bad[1]} have no common solution",
            i=bad[0],
            j=bad[1],
        )
    base = sys.ineq(1).normal
    if all(cross(q.normal, base) == 0 for q in sys.inequalities):
        raise RankDeficientError("all borders are parallel")
    if find_interior_point(sys.halfplanes()) is not None:
        raise ConsistentSystemError("system is consistent; no marked MCS")


def _find_marked_mcs_unchecked(
    sys: System, start: int, ray: Direction
) -> tuple[MarkedMcs, ProcedureTrace]:
    l0 = sys.border(start)
    u = l0.direction()
    if ray.is_zero() or cross(ray, u) != 0:
        raise InputError("starting ray is not parallel to the border")
    lo_ray, hi_ray = canonical_rays(sys, start)
    r0 = lo_ray if same_direction(ray, lo_ray.dir) else hi_ray
    (a, b), hbar, trace = _run_procedure(
        sys.halfplanes(), start - 1, ray, r0.vertex
    )
    members = tuple(
        j
        for j in sys.indices()
        if side_of_perturbed(sys.halfplane(j), hbar) is Side.INSIDE
    )
    pair = (min(a, b) + 1, max(a, b) + 1)
    assert pair[0] in members and pair[1] in members
    return MarkedMcs(members, pair, hbar), trace


def find_marked_mcs(
    sys: System, start: int, ray: Direction
) -> tuple[MarkedMcs, ProcedureTrace]:
    """Run the walk from the given inequality's border along `ray` (which
    must be parallel to that border); the admissible ray vertex is derived
    from the extreme border crossings."""
    _check_marked_preconditions(sys)
    return _find_marked_mcs_unchecked(sys, start, ray)


def all_marked_mcs(sys: System) -> list[MarkedMcs]:
    """Every marked MCS: the walk from every border with both admissible
    rays, deduplicated by index set (keeping the smallest determining pair
    when runs disagree, which the tests assert never happens)."""
    _check_marked_preconditions(sys)
    found: dict[tuple[int, ...], MarkedMcs] = {}
    for start in sys.indices():
        for r in canonical_rays(sys, start):
            mm, _ = _find_marked_mcs_unchecked(sys, start, r.dir)
            old = found.get(mm.members)
            if old is None or mm.determining_pair < old.determining_pair:
                found[mm.members] = mm
    return [found[k] for k in sorted(found)]


def determining_pair_check(sys: System, i: int, j: int) -> bool:
    """Exact test of whether inequalities i and j form the determining pair
    of some marked MCS, by the three trace-intersection identities at the
    crossing of their borders."""
    if i == j:
        raise InputError("a determining pair needs two distinct indices")
    li, lj = sys.border(i), sys.border(j)
    hbar = line_intersect(li, lj)
    if not isinstance(hbar, Point):
        raise ParallelBordersError(
            f"borders of inequalities {i} and {j} do not cross", i=i, j=j
        )
    hps = {k: sys.halfplane(k) for k in sys.indices()}

    rij = halfplane_cap_line(hps[i], lj)
    rji = halfplane_cap_line(hps[j], li)
    assert isinstance(rij, Ray) and rij.vertex == hbar
    assert isinstance(rji, Ray) and rji.vertex == hbar

    def trace_caps_equal(sys_line: Line, ref: Ray):
        """Indices whose trace on sys_line equals the reference ray."""
        out = []
        for k, hp in hps.items():
            capk = halfplane_cap_line(hp, sys_line)
            if (
                isinstance(capk, Ray)
                and capk.vertex == ref.vertex
                and same_direction(capk.dir, ref.dir)
            ):
                out.append(k)
        return out

    # first identity: no half-plane meeting D_i ∩ l_j in a ray may cut that
    # ray shorter (trace vertex strictly past the crossing)
    def no_shorter_cut(line: Line, ref: Ray) -> bool:
        for hp in hps.values():
            r = _is_codirectional_trace(hp, line, ref.dir)
            if r is not None and r[0] == "ray":
                if dot(r[1] - ref.vertex, ref.dir) > 0:
                    return False
        return True

    if not no_shorter_cut(lj, rij) or not no_shorter_cut(li, rji):
        return False

    # second identity: every half-plane whose trace on l_j equals D_i ∩ l_j
    # must contain the cone D_i ∩ D_j, i.e. be nonnegative on the cone edge
    # along l_i (the edge along l_j is automatic), and symmetrically
    for k in trace_caps_equal(lj, rij):
        if dot(hps[k].normal, rji.dir) < 0:
            return False
    for k in trace_caps_equal(li, rji):
        if dot(hps[k].normal, rij.dir) < 0:
            return False
    return True


def solve_consistent(sys: System) -> Point:
    """Exact solution of a consistent system via the walk (or directly when
    all borders are parallel); raises Inconsistent when there is none."""
    bad = pairwise_inconsistent_pair(sys)
    if bad is not None:
        raise InconsistentError(
            f"inequalities {bad[0]} and {bad[1]} have no common solution"
        )
    base = sys.ineq(1).normal
    hps = sys.halfplanes()
    if all(cross(q.normal, base) == 0 for q in sys.inequalities):
        # rank-one fallback: a one-dimensional interval problem
        w = find_interior_point(hps)
        if w is None:
            raise InconsistentError("parallel family with empty intersection")
        return w
    e = next(j for j in sys.indices() if cross(sys.ineq(j).normal, base) != 0)
    cap = halfplane_cap_line(sys.halfplane(e), sys.border(1))
    assert isinstance(cap, Ray)
    _, hbar, _ = _run_procedure(hps, 0, cap.dir, cap.vertex)
    if all(side_of_perturbed(hp, hbar) is Side.INSIDE for hp in hps):
        from .geometry import materialize

        return materialize(hbar, hps)
    raise InconsistentError("system has no solution")


def extend_to_mcs(sys: System, J0: Sequence[int], h0: Point) -> McsSet:
    """Greedy maximal extension of the consistent seed J0 (witnessed by h0):
    each remaining inequality is kept iff the walk on the enlarged subsystem
    still produces a common solution."""
    members = sorted(set(J0))
    if not members:
        raise InconsistentSeedError("empty seed")
    for idx in members:
        if not (1 <= idx <= sys.m):
            raise InputError(f"seed index {idx} out of range")
    if any(side_of(sys.halfplane(i), h0) is not Side.INSIDE for i in members):
        raise InconsistentSeedError("seed witness violates the seed")

    cur = list(members)
    for e in sys.indices():
        if e in cur:
            continue
        cand = cur + [e]
        sub = [sys.halfplane(i) for i in cand]
        if pairwise_inconsistent_pair(sys.subsystem(cand)) is not None:
            continue
        base = sub[0].normal
        if all(cross(hp.normal, base) == 0 for hp in sub):
            if find_interior_point(sub) is not None:
                cur = cand
            continue
        e_pos = len(sub) - 1
        ebar_pos = next(
            k for k, hp in enumerate(sub[:-1]) if cross(hp.normal, sub[-1].normal) != 0
        )
        cap = halfplane_cap_line(sub[ebar_pos], sub[e_pos].border())
        assert isinstance(cap, Ray)
        _, hbar, _ = _run_procedure(sub, e_pos, cap.dir, cap.vertex)
        if all(side_of_perturbed(hp, hbar) is Side.INSIDE for hp in sub):
            cur = cand
    cur.sort()
    w = find_interior_point([sys.halfplane(i) for i in cur])
    assert w is not None, "greedy extension lost consistency"
    return McsSet(tuple(cur), w)


def homogeneous_mcs_enumeration(
    normals: Sequence[tuple[Rat, Rat]]
) -> list[McsSet]:
    """All maximal sets J of positions such that some direction d has
    (c_j, d) > 0 for every j in J, by a circular sweep: the satisfied-set is
    constant on each open arc between consecutive boundary directions (the
    normals rotated by 90 degrees either way), and each arc is sampled by
    the sum of its two bounding directions."""
    if len(normals) == 0:
        raise EmptyInputError("no normals given")
    cs = [Direction(Fraction(cx), Fraction(cy)) for cx, cy in normals]
    for k, c in enumerate(cs, start=1):
        if c.is_zero():
            raise ZeroNormalError(f"normal {k} is zero")
    for a in range(len(cs)):
        for b in range(a + 1, len(cs)):
            if same_direction(cs[a], cs[b]):
                raise DuplicateInequalityError(
                    f"normals {a + 1} and {b + 1} are positively proportional",
                    i=a + 1,
                    j=b + 1,
                )

    dirs: list[Direction] = []
    for c in cs:
        for d in (c.perp(), -c.perp()):
            nd = d.normalized()
            if nd not in dirs:
                dirs.append(nd)

    if len(dirs) <= 2:
        # all normals on one line: one or two (opposite) normals
        out = [McsSet((k + 1,), cs[k]) for k in range(len(cs))]
        return sorted(out, key=lambda s: s.members)

    dirs = angular_sort(dirs)

    best: dict[tuple[int, ...], Direction] = {}
    n = len(dirs)
    for idx in range(n):
        d = dirs[idx] + dirs[(idx + 1) % n]
        assert not d.is_zero()
        members = tuple(k + 1 for k, c in enumerate(cs) if dot(c, d) > 0)
        if members and members not in best:
            best[members] = d

    maximal = [
        m for m in best if not any(set(m) < set(t) for t in best)
    ]
    return [McsSet(m, best[m]) for m in sorted(maximal)]
