"""Committee construction for inconsistent strict linear inequality systems.

Three builders live here:

* ``build_committee`` — the general algorithm: collect marked MCS solutions,
  build a minimal committee of the subsystem violated at the chosen origin,
  then repair the under-voted satisfied inequalities round by round using an
  angular-split construction on the polar point system.
* ``three_committee`` — the specialized three-member construction from one
  marked MCS and its determining pair, complete for systems admitting a
  3-committee.
* ``three_committee_criterion`` / ``corollary41_check`` — the combinatorial
  existence test for 3-committees (every five inequalities must contain a
  consistent four) and its restriction around a maximal consistent set of
  cardinality m - 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence, Union

from .errors import (
    InputError,
    InternalError,
    NoCommitteeDetectedError,
    NotGeneralPositionError,
    OriginOnBoundaryError,
    WrongCardinalityError,
)
from .geometry import (
    Direction,
    HalfPlane,
    Point,
    Ray,
    angular_sort,
    cross,
    dot,
    find_interior_point,
    halfplane_cap_line,
    is_consistent,
    materialize,
    same_direction,
)
from .mcs import (
    McsSet,
    all_marked_mcs,
    canonical_rays,
    extend_to_mcs,
    find_marked_mcs,
    homogeneous_mcs_enumeration,
)
from .oracle import is_general_position, verify_committee
from .polar import (
    ColoredPoint,
    Committee,
    HalfPlaneCommittee,
    System,
    committee_to_halfplanes,
    point_system_of,
    votes_for,
)


@dataclass(frozen=True)
class GeneralPositionSystem:
    """A system whose border lines pairwise cross at pairwise distinct
    points (no parallels, no three concurrent); certified at construction."""

    sys: System

    def __post_init__(self):
        if self.sys.m < 3:
            raise NotGeneralPositionError(
                "general-position systems need at least three inequalities"
            )
        if not is_general_position(self.sys):
            raise NotGeneralPositionError(
                "border lines must pairwise cross at distinct points"
            )


@dataclass(frozen=True)
class Cone:
    """Closed convex cone at the origin from ray u counterclockwise to ray
    w, of angular measure at most pi (zero measure when u and w agree)."""

    u: Direction
    w: Direction

    def contains(self, v: Direction) -> bool:
        if v.is_zero():
            return True
        if same_direction(self.u, self.w):
            return cross(self.u, v) == 0 and dot(self.u, v) >= 0
        return cross(self.u, v) >= 0 and cross(v, self.w) >= 0


@dataclass(frozen=True)
class RoundRecord:
    chosen_b: int
    a1: tuple[int, ...]
    a2: tuple[int, ...]
    b1: tuple[int, ...]          # the direction-compatible satisfied points
    alpha: Cone
    beta1: Cone
    beta2: Cone
    b11: tuple[Optional[int], ...]
    b12: tuple[Optional[int], ...]
    added: tuple[Point, ...]     # 2 or 4 new member points
    second: bool
    gamma: Optional[Cone]
    beta_p1: Optional[Cone]
    beta_p2: Optional[Cone]
    b21: tuple[Optional[int], ...]
    b22: tuple[Optional[int], ...]
    excluded: tuple[int, ...]


@dataclass(frozen=True)
class Step3State:
    remaining: tuple[int, ...]   # sources still awaiting a majority
    committee_so_far: HalfPlaneCommittee
    rounds: tuple[RoundRecord, ...]


def _member_halfplane(g: Point, z: Point) -> HalfPlane:
    """The open half-plane with z outside its closure whose point under the
    inverse polar map is g."""
    c = g - z
    return HalfPlane(c.dx, c.dy, 1 + c.dx * z.x + c.dy * z.y)


def _minimal_cone(vectors: Sequence[Direction]) -> Optional[Cone]:
    """The minimal closed cone of measure strictly below pi containing all
    the (nonzero, pairwise non-parallel) vectors, or None if none exists.
    Found via the unique cyclic gap larger than pi in angular order."""
    assert vectors and all(not v.is_zero() for v in vectors)
    dirs = angular_sort([v.normalized() for v in vectors])
    n = len(dirs)
    if n == 1:
        return Cone(dirs[0], dirs[0])
    for k in range(n):
        if cross(dirs[k], dirs[(k + 1) % n]) < 0:
            return Cone(dirs[(k + 1) % n], dirs[k])
    return None


def _adjacent_cones(alpha: Cone) -> tuple[Cone, Cone]:
    """The two angles adjacent to alpha (its sides extended to lines),
    returned as (following, preceding) in counterclockwise order."""
    after = Cone(alpha.w, -alpha.u)
    before = Cone(-alpha.w, alpha.u)
    return after, before


def _label_betas(
    alpha: Cone, a1_vecs: Sequence[Direction], a2_vecs: Sequence[Direction]
) -> tuple[Cone, Cone]:
    """Order the two adjacent angles as (beta1, beta2) so that the first
    split part lies in beta2 and the second in beta1."""
    after, before = _adjacent_cones(alpha)
    for b1, b2 in ((before, after), (after, before)):
        if all(b2.contains(v) for v in a1_vecs) and all(
            b1.contains(v) for v in a2_vecs
        ):
            return b1, b2
    raise InternalError(
        "split parts do not fit the angles adjacent to the minimal cone"
    )


def _beyond_seed(sys: System, members: Sequence[int], z: Point, d: Direction) -> Point:
    """A point of the form z + t*d satisfying every listed inequality, given
    that d makes an acute angle with each of their normals."""
    t = Fraction(1)
    for j in members:
        s = -sys.ineq(j).value_at(z)
        rate = dot(sys.ineq(j).normal, d)
        assert rate > 0
        if s > 0:
            t = max(t, 1 + s / rate)
    return z + d.scale(t)


def _mcs_solution_through(sys: System, seed: Sequence[int]) -> Point:
    """A solution of some maximal consistent subsystem containing `seed`."""
    hps = [sys.halfplane(j) for j in seed]
    h0 = find_interior_point(hps)
    assert h0 is not None, "round subsystem must be consistent"
    return extend_to_mcs(sys, seed, h0).witness


def build_committee(
    gps: GeneralPositionSystem,
    z: Point,
    *,
    b2_source: str = "full",
    exclusion_mode: str = "round",
) -> tuple[Committee, Step3State]:
    """The general committee construction.

    First every marked MCS is collected; then a minimal committee of the
    subsystem violated at z is formed from one MCS solution per directional
    MCS of that subsystem; finally, while some satisfied inequality lacks a
    majority, an angular-split round adds two or four more members.

    ``b2_source`` chooses whether the second-split trigger set is drawn
    from all satisfied points ("full", the default) or only the still
    unserved ones ("remaining"). The default is the sound one: a satisfied
    point that already has its majority can lose it when both of a round's
    additions vote against it, and the second split exists to protect
    exactly those points, so the trigger must see the whole satisfied set.
    ``exclusion_mode`` chooses whether exclusion counts votes of the current
    round's additions ("round") or the whole collection so far
    ("cumulative").
    """
    if b2_source not in ("remaining", "full"):
        raise InputError(f"unknown b2_source {b2_source!r}")
    if exclusion_mode not in ("round", "cumulative"):
        raise InputError(f"unknown exclusion_mode {exclusion_mode!r}")
    sys = gps.sys
    for j in sys.indices():
        if sys.ineq(j).value_at(z) == 0:
            raise OriginOnBoundaryError(
                f"origin lies on the border of inequality {j}", j=j
            )

    marked = all_marked_mcs(sys)  # validates inconsistency as a side effect

    # --- minimal committee of the subsystem violated at z ------------------
    violated = [j for j in sys.indices() if sys.ineq(j).value_at(z) < 0]
    assert violated, "an inconsistent system is violated somewhere"
    homog = homogeneous_mcs_enumeration(
        [(sys.ineq(j).cx, sys.ineq(j).cy) for j in violated]
    )
    q0 = len(homog)
    if q0 % 2 != 1:
        raise InternalError("directional MCS count must be odd")
    members: list[Point] = []
    for hs in homog:
        sub = tuple(violated[k - 1] for k in hs.members)
        containing = [mm for mm in marked if set(sub) <= set(mm.members)]
        if containing:
            best = min(containing, key=lambda mm: mm.determining_pair)
            g = materialize(best.witness, sys.halfplanes())
        else:
            h0 = _beyond_seed(sys, sub, z, hs.witness)
            g = extend_to_mcs(sys, sub, h0).witness
        members.append(g)

    # --- which satisfied inequalities still lack a majority -----------------
    def support(j: int, pts: Sequence[Point]) -> int:
        return sum(1 for g in pts if sys.ineq(j).satisfied_at(g))

    need = (q0 + 1) // 2
    lacking = [j for j in sys.indices() if support(j, members) < need]
    assert not set(lacking) & set(violated), (
        "every violated inequality is satisfied by a majority of the "
        "directional committee"
    )

    ps = point_system_of(sys, z)
    vec: dict[Optional[int], Direction] = {
        d.source: d.pos - z for d in ps.all_points()
    }
    blacks = list(ps.A)
    reds_all = list(ps.B)  # includes the adjoined origin (source None)
    remaining: list[ColoredPoint] = [
        d for d in reds_all if d.source in set(lacking)
    ]

    collection: list[Point] = list(members)
    rounds: list[RoundRecord] = []

    def state_now() -> Step3State:
        return Step3State(
            tuple(d.source for d in remaining),
            committee_to_halfplanes(Committee(tuple(collection)), z),
            tuple(rounds),
        )

    def fail(msg: str) -> NoCommitteeDetectedError:
        err = NoCommitteeDetectedError(
            msg, rounds=len(rounds), remaining=len(remaining)
        )
        err.state = state_now()
        return err

    while remaining:
        b = min(remaining, key=lambda d: d.source)
        vb = vec[b.source]
        a1 = [a for a in blacks if cross(vb, vec[a.source]) > 0]
        a2 = [a for a in blacks if cross(vb, vec[a.source]) < 0]
        assert len(a1) + len(a2) == len(blacks)

        # satisfied points that no black's line strictly separates from b
        b1_pts = [
            bp
            for bp in remaining
            if all(
                cross(vec[a.source], vb) * cross(vec[a.source], vec[bp.source])
                >= 0
                for a in blacks
            )
        ]
        alpha = _minimal_cone([vec[bp.source] for bp in b1_pts])
        if alpha is None:
            raise fail("compatible satisfied points span a half-turn or more")
        beta1, beta2 = _label_betas(
            alpha, [vec[a.source] for a in a1], [vec[a.source] for a in a2]
        )

        b11 = [d for d in reds_all if alpha.contains(vec[d.source]) or beta1.contains(vec[d.source])]
        b12 = [d for d in reds_all if alpha.contains(vec[d.source]) or beta2.contains(vec[d.source])]
        seed1 = sorted(
            {a.source for a in a1} | {d.source for d in b11 if d.source}
        )
        seed2 = sorted(
            {a.source for a in a2} | {d.source for d in b12 if d.source}
        )
        added = [
            _mcs_solution_through(sys, seed1),
            _mcs_solution_through(sys, seed2),
        ]

        # points of the satisfied side that both new half-planes vote against
        pool = remaining if b2_source == "remaining" else [
            d for d in reds_all if d.source is not None
        ]
        hp_new = [_member_halfplane(g, z) for g in added]
        b2_pts = [
            d for d in pool if all(hp.value_at(d.pos) > 0 for hp in hp_new)
        ]
        gamma = beta_p1 = beta_p2 = None
        b21: list[ColoredPoint] = []
        b22: list[ColoredPoint] = []
        if b2_pts:
            gamma = _minimal_cone([vec[d.source] for d in b2_pts])
            if gamma is None:
                raise fail("doubly opposed satisfied points span a half-turn")
            beta_p1, beta_p2 = _label_betas(
                gamma, [vec[a.source] for a in a1], [vec[a.source] for a in a2]
            )
            b21 = [d for d in reds_all if gamma.contains(vec[d.source]) or beta_p1.contains(vec[d.source])]
            b22 = [d for d in reds_all if gamma.contains(vec[d.source]) or beta_p2.contains(vec[d.source])]
            seed3 = sorted(
                {a.source for a in a1} | {d.source for d in b21 if d.source}
            )
            seed4 = sorted(
                {a.source for a in a2} | {d.source for d in b22 if d.source}
            )
            added.append(_mcs_solution_through(sys, seed3))
            added.append(_mcs_solution_through(sys, seed4))

        collection.extend(added)

        voters = added if exclusion_mode == "round" else collection
        voter_hps = [_member_halfplane(g, z) for g in voters]
        excluded = [
            d
            for d in remaining
            if 2 * sum(1 for hp in voter_hps if votes_for(hp, d, z))
            > len(voters)
        ]
        rounds.append(
            RoundRecord(
                chosen_b=b.source,
                a1=tuple(a.source for a in a1),
                a2=tuple(a.source for a in a2),
                b1=tuple(d.source for d in b1_pts),
                alpha=alpha,
                beta1=beta1,
                beta2=beta2,
                b11=tuple(d.source for d in b11),
                b12=tuple(d.source for d in b12),
                added=tuple(added),
                second=bool(b2_pts),
                gamma=gamma,
                beta_p1=beta_p1,
                beta_p2=beta_p2,
                b21=tuple(d.source for d in b21),
                b22=tuple(d.source for d in b22),
                excluded=tuple(d.source for d in excluded),
            )
        )
        if not excluded:
            raise fail("a round served no further satisfied inequality")
        gone = {d.source for d in excluded}
        remaining = [d for d in remaining if d.source not in gone]

    committee = Committee(tuple(collection))
    ok, votes = verify_committee(sys, committee)
    if not ok:
        raise InternalError(
            "constructed collection fails verification", votes=votes
        )
    if committee.size % 2 != 1:
        raise InternalError("committee cardinality must be odd")
    return committee, state_now()


def three_committee(sys: System) -> Optional[Committee]:
    """Try to build a committee of exactly three members: one marked MCS
    solution, plus the two obtained by restarting the walk on each border of
    its determining pair, against the other one's trace. Returns None when
    the resulting triple is not a committee (then none of size 3 exists)."""
    first_ray = canonical_rays(sys, 1)[0]
    mm1, _ = find_marked_mcs(sys, 1, first_ray.dir)
    i, j = mm1.determining_pair

    cap_j_on_i = halfplane_cap_line(sys.halfplane(j), sys.border(i))
    cap_i_on_j = halfplane_cap_line(sys.halfplane(i), sys.border(j))
    assert isinstance(cap_j_on_i, Ray) and isinstance(cap_i_on_j, Ray)
    mm2, _ = find_marked_mcs(sys, i, -cap_j_on_i.dir)
    mm3, _ = find_marked_mcs(sys, j, -cap_i_on_j.dir)

    pts = tuple(
        materialize(mm.witness, sys.halfplanes()) for mm in (mm1, mm2, mm3)
    )
    K = Committee(pts)
    ok, _ = verify_committee(sys, K)
    return K if ok else None


def three_committee_criterion(sys: System) -> bool:
    """Whether every five inequalities contain a consistent four — the exact
    condition for a three-member committee to exist (vacuously true for
    fewer than five inequalities)."""
    idx = list(sys.indices())
    if len(idx) < 5:
        return True
    for five in combinations(idx, 5):
        if not any(
            is_consistent([sys.halfplane(k) for k in four])
            for four in combinations(five, 4)
        ):
            return False
    return True


def corollary41_check(sys: System, J0: Union[McsSet, Sequence[int]]) -> bool:
    """The restricted three-committee criterion around a maximal consistent
    set of cardinality m - 2: only the five-element subsystems containing
    both outside indices need checking."""
    members = tuple(J0.members) if isinstance(J0, McsSet) else tuple(
        sorted(set(J0))
    )
    if len(members) != sys.m - 2:
        raise WrongCardinalityError(
            f"need a set of cardinality {sys.m - 2}, got {len(members)}"
        )
    hps = [sys.halfplane(k) for k in members]
    if find_interior_point(hps) is None:
        raise WrongCardinalityError("the given set is not consistent")
    outside = [e for e in sys.indices() if e not in set(members)]
    for e in outside:
        if find_interior_point(hps + [sys.halfplane(e)]) is not None:
            raise WrongCardinalityError("the given set is not maximal")
    if sys.m < 5:
        return True
    for triple in combinations(members, 3):
        five = tuple(sorted(triple + tuple(outside)))
        if not any(
            is_consistent([sys.halfplane(k) for k in four])
            for four in combinations(five, 4)
        ):
            return False
    return True


def prop43_check(gps: GeneralPositionSystem, z: Point) -> bool:
    """When a three-member committee exists and the subsystem violated at z
    is itself inconsistent, the general construction at z must return
    exactly three members; reports whether that held (vacuously true when
    either antecedent fails)."""
    sys = gps.sys
    if three_committee(sys) is None:
        return True
    violated = [j for j in sys.indices() if sys.ineq(j).value_at(z) < 0]
    if not violated or is_consistent([sys.halfplane(j) for j in violated]):
        return True
    K, _ = build_committee(gps, z)
    return K.size == 3
