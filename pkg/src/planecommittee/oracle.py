"""Brute-force ground truth, independent of the constructive algorithms.

Everything here works from first principles on the arrangement of border
lines: enumerate open cells, read off satisfied-sets, search committees
exhaustively. The constructive machinery is tested against this module,
never the other way around.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import EmptyCommitteeError, InternalError
from .geometry import (
    Direction,
    HalfPlane,
    Line,
    PerturbedPoint,
    Point,
    Side,
    _pair_cone_dirs,
    cross,
    line_intersect,
    materialize,
    side_of,
    side_of_perturbed,
)
from .polar import Committee, System, pairwise_inconsistent_pair

Rat = Fraction


@dataclass(frozen=True)
class Cell:
    """Open cell of the border-line arrangement, identified by its side
    pattern over the inequalities (Inside/Outside, never Boundary)."""

    signs: tuple[Side, ...]
    witness: Point

    def satisfied(self) -> tuple[int, ...]:
        return tuple(
            j for j, s in enumerate(self.signs, start=1) if s is Side.INSIDE
        )


def is_general_position(sys: System) -> bool:
    """Pairwise non-parallel borders and no three borders concurrent."""
    lines = [sys.border(j) for j in sys.indices()]
    m = len(lines)
    pts: list[Point] = []
    for i in range(m):
        for j in range(i + 1, m):
            v = line_intersect(lines[i], lines[j])
            if not isinstance(v, Point):
                return False
            pts.append(v)
    # no three concurrent: all C(m,2) vertices distinct
    return len(set(p.key() for p in pts)) == len(pts)


def _candidate(base: Point, d: Direction, hps: Sequence[HalfPlane]) -> Optional[Point]:
    """Materialize base pushed along d, or None if the pushed point is not
    strictly off every border."""
    pp = PerturbedPoint(base, d)
    if any(side_of_perturbed(hp, pp) is Side.BOUNDARY for hp in hps):
        return None
    return materialize(pp, hps)


def arrangement_cells(sys: System) -> list[Cell]:
    """All open cells of the arrangement of the m border lines.

    Candidates come from three families:
      1. interval samples on each line (beyond the extreme crossings, and
         midpoints between consecutive crossings), pushed to both sides;
      2. pairwise crossing vertices pushed along the four diagonal
         directions of the crossing;
      3. far points on a bounding square outside every crossing.
    Family 1 alone is complete: every cell's boundary contains a positive
    length piece of some line, and that piece contains an interval sample.
    Families 2 and 3 are kept as cheap redundancy.
    """
    m = sys.m
    lines = [sys.border(j) for j in sys.indices()]
    hps = sys.halfplanes()
    cands: list[Point] = []

    # family 1: per-line interval samples
    for j, l in enumerate(lines):
        params = set()
        for k, l2 in enumerate(lines):
            if k == j:
                continue
            v = line_intersect(l, l2)
            if isinstance(v, Point):
                params.add(l.param_of(v))
        ts = sorted(params)
        if ts:
            samples = [ts[0] - 1]
            samples += [(a + b) / 2 for a, b in zip(ts, ts[1:])]
            samples.append(ts[-1] + 1)
        else:
            samples = [Fraction(0)]
        for t in samples:
            base = l.point_at(t)
            for sgn in (1, -1):
                p = _candidate(base, l.normal.scale(Fraction(sgn)), hps)
                if p is not None:
                    cands.append(p)

    # family 2: crossing vertices pushed diagonally
    verts: list[Point] = []
    for i in range(m):
        for j in range(i + 1, m):
            v = line_intersect(lines[i], lines[j])
            if not isinstance(v, Point):
                continue
            verts.append(v)
            for d in _pair_cone_dirs(lines[i].normal, lines[j].normal):
                p = _candidate(v, d, hps)
                if p is not None:
                    cands.append(p)

    # family 3: far points on a bounding square
    coords = [abs(v.x) for v in verts] + [abs(v.y) for v in verts]
    radius = 2 + 2 * max(coords, default=Fraction(0))
    far_dirs: list[Direction] = []
    for l in lines:
        for d in (l.direction(), -l.direction(), l.normal, -l.normal):
            nd = d.normalized()
            if all(nd != e for e in far_dirs):
                far_dirs.append(nd)
    for d in far_dirs:
        scale = radius / max(abs(d.dx), abs(d.dy))
        p = Point(d.dx * scale, d.dy * scale)
        sides = [side_of(hp, p) for hp in hps]
        if Side.BOUNDARY not in sides:
            cands.append(p)

    cells: dict[tuple[Side, ...], Point] = {}
    for p in cands:
        signs = tuple(side_of(hp, p) for hp in hps)
        assert Side.BOUNDARY not in signs
        cells.setdefault(signs, p)

    out = [Cell(signs, w) for signs, w in cells.items()]
    out.sort(key=lambda c: tuple(s.value for s in c.signs), reverse=True)
    if is_general_position(sys):
        expected = 1 + m + m * (m - 1) // 2
        if len(out) != expected:
            raise InternalError(
                f"cell enumeration found {len(out)} cells, expected {expected}"
            )
    return out


def brute_mcs(sys: System) -> list[tuple[int, ...]]:
    """Index sets of all maximal consistent subsystems, sorted."""
    sets = {frozenset(c.satisfied()) for c in arrangement_cells(sys)}
    maximal = [
        s for s in sets if not any(s < t for t in sets)
    ]
    return sorted(tuple(sorted(s)) for s in maximal)


def verify_committee(sys: System, K: Committee) -> tuple[bool, list[int]]:
    """Per-inequality satisfaction counts with multiplicity; true iff every
    count exceeds half the committee size."""
    if K.size == 0:
        raise EmptyCommitteeError("committee has no members")
    votes = []
    for j in sys.indices():
        q = sys.ineq(j)
        votes.append(sum(1 for x in K.members if q.satisfied_at(x)))
    ok = all(2 * v > K.size for v in votes)
    return ok, votes


@dataclass(frozen=True)
class OracleReport:
    all_mcs: list[tuple[int, ...]]
    min_committee_size: Optional[int]
    witness_committee: Optional[Committee]
    votes: Optional[list[int]]
    q_max: int
    q_max_exceeded: bool
    committee_impossible: bool


def brute_min_committee(sys: System, q_max: int = 9) -> OracleReport:
    """Exhaustive minimal-committee search over odd sizes 1, 3, ... q_max.

    Members can be restricted to one representative point per maximal
    satisfied-set: membership in open half-planes depends only on the cell,
    and swapping a member for one whose satisfied-set is a superset never
    lowers any inequality's vote count. The search is depth-first over
    non-decreasing representative indices with per-inequality deficit
    pruning; the first solution found is the lexicographically smallest
    multiset for the smallest odd size.
    """
    assert q_max >= 1 and q_max % 2 == 1, "q_max must be odd and positive"
    m = sys.m
    cells = arrangement_cells(sys)
    mcs_sets = brute_mcs(sys)

    # one representative cell per maximal satisfied-set, in sorted order
    reps: list[Cell] = []
    for target in mcs_sets:
        rep = next(c for c in cells if c.satisfied() == target)
        reps.append(rep)
    masks = [sum(1 << (j - 1) for j in c.satisfied()) for c in reps]

    bad_pair = pairwise_inconsistent_pair(sys)
    if bad_pair is not None:
        return OracleReport(
            mcs_sets, None, None, None, q_max, False, True
        )

    full = (1 << m) - 1
    if any(mask == full for mask in masks):
        # consistent system: a single member suffices
        idx = next(i for i, mask in enumerate(masks) if mask == full)
        K = Committee((reps[idx].witness,))
        ok, votes = verify_committee(sys, K)
        assert ok
        return OracleReport(mcs_sets, 1, K, votes, q_max, False, False)

    n = len(reps)
    suffix_or = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_or[i] = suffix_or[i + 1] | masks[i]

    def search(q: int) -> Optional[list[int]]:
        need = q // 2 + 1
        counts = [0] * m
        chosen: list[int] = []

        def dfs(start: int, left: int) -> bool:
            if left == 0:
                return all(c >= need for c in counts)
            deficit_mask = 0
            for i in range(m):
                lack = need - counts[i]
                if lack > left:
                    return False
                if lack > 0:
                    deficit_mask |= 1 << i
            if deficit_mask & ~suffix_or[start]:
                return False
            for r in range(start, n):
                chosen.append(r)
                mk = masks[r]
                for i in range(m):
                    if mk >> i & 1:
                        counts[i] += 1
                if dfs(r, left - 1):
                    return True
                for i in range(m):
                    if mk >> i & 1:
                        counts[i] -= 1
                chosen.pop()
            return False

        return list(chosen) if dfs(0, q) else None

    for q in range(1, q_max + 1, 2):
        sol = search(q)
        if sol is not None:
            K = Committee(tuple(reps[r].witness for r in sol))
            ok, votes = verify_committee(sys, K)
            assert ok, "oracle witness failed its own verification"
            return OracleReport(mcs_sets, q, K, votes, q_max, False, False)

    return OracleReport(mcs_sets, None, None, None, q_max, True, False)
