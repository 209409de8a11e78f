"""Seeded instance generators.

Three families:

- ``gen_regular_qgon``: tangent system of a (rationalized) regular odd
  q-gon inscribed in the unit circle — the pattern whose minimal committee
  and marked-subsystem count both equal q.
- ``gen_example2``: points on three pairwise disjoint sixth-circle arcs,
  giving systems whose minimal committee grows as q while the number of
  marked maximal consistent subsystems stays at three.
- ``gen_random``: random instances in three profiles (generic
  general-position, polygon-bounding, and with-committee).

Every generator is a pure function of its arguments: the same
``(parameters, seed)`` always yields the identical system.  Unit-circle
points are produced exactly through the rational parametrization
``t -> ((1 - t^2)/(1 + t^2), 2t/(1 + t^2))``, which is dense on the circle,
so each construction can assert its defining combinatorics and retry with a
finer rational approximation when the assertion fails.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Optional

from .errors import (
    DuplicateInequalityError,
    GenerationTimeoutError,
    InputError,
)
from .geometry import Point, cross, find_interior_point
from .mcs import all_marked_mcs
from .oracle import brute_mcs, brute_min_committee, is_general_position
from .polar import Inequality, System, pairwise_inconsistent_pair

Rat = Fraction

PROFILES = ("generic", "polygon", "with-committee")

_MAX_ATTEMPTS = 1000


def circle_point(t: Rat) -> Point:
    """Exact rational point of the unit circle at parameter t = tan(angle/2).

    Covers the whole circle except (-1, 0) as t ranges over the rationals;
    the circle ordering of points agrees with the ordering of their
    parameters (angles increase from -pi to pi as t runs over the reals).
    """
    t = Fraction(t)
    den = 1 + t * t
    return Point((1 - t * t) / den, 2 * t / den)


def _rationalize_angle(theta: float, max_denominator: int) -> Rat:
    """Rational tan-half-angle parameter near the given angle (radians,
    normalized into (-pi, pi))."""
    while theta > math.pi:
        theta -= 2 * math.pi
    while theta <= -math.pi:
        theta += 2 * math.pi
    return Fraction(math.tan(theta / 2)).limit_denominator(max_denominator)


# --- regular odd q-gon --------------------------------------------------------

def gen_regular_qgon(q: int, seed: int = 0) -> System:
    """Inconsistent system ``(c, x) > 1`` over q rational unit vectors
    placed at (approximately) equal angles, q odd.

    Exact regular polygons are out of reach in rational coordinates, so the
    vertices are rational circle points near the regular angles and the
    generator asserts the defining combinatorics of the regular pattern
    instead: the maximal consistent subsystems are exactly the q runs of
    (q+1)/2 circularly consecutive inequalities (every shorter run of
    normals spans less than a half-circle and stays consistent; every
    longer one does not).  On assertion failure the approximation is
    refined and the construction retried; rational points are dense on the
    circle, so the loop terminates.

    The seed only rotates the whole pattern.
    """
    if q < 3 or q % 2 == 0:
        raise InputError(f"q must be an odd integer >= 3, got {q}")
    rng = random.Random(f"qgon:{q}:{seed}")
    offset = rng.uniform(0.0, 2.0 * math.pi / q)
    run = (q + 1) // 2
    expected = sorted(
        tuple(sorted((k + i) % q + 1 for i in range(run))) for k in range(q)
    )
    max_denominator = 10**4
    for _ in range(12):
        ts = [
            _rationalize_angle(offset + 2.0 * math.pi * k / q, max_denominator)
            for k in range(q)
        ]
        max_denominator *= 100
        if len(set(ts)) != q:
            continue
        try:
            sys = System(
                tuple(
                    Inequality(p.x, p.y, Fraction(1))
                    for p in (circle_point(t) for t in ts)
                )
            )
        except DuplicateInequalityError:
            continue
        if brute_mcs(sys) == expected:
            return sys
    raise AssertionError(
        f"regular {q}-gon combinatorics did not stabilize under refinement"
    )


# --- three-arc construction -----------------------------------------------------

# Closed rational t-intervals strictly inside three pairwise disjoint arcs
# of length pi/3 (every second arc of a sixth-circle partition of the unit
# circle): angles (-pi/6, pi/6), (pi/2, 5pi/6), (-5pi/6, -pi/2) have
# t-intervals (tan(-pi/12), tan(pi/12)), (1, tan(5pi/12)) and its mirror,
# with tan(pi/12) = 2 - sqrt(3) > 1/4 and tan(5pi/12) = 2 + sqrt(3) > 18/5.
_ARCS: tuple[tuple[Rat, Rat], ...] = (
    (Fraction(-1, 4), Fraction(1, 4)),
    (Fraction(11, 10), Fraction(18, 5)),
    (Fraction(-18, 5), Fraction(-11, 10)),
)


def _jitter(rng: random.Random, bound: Rat) -> Rat:
    """Exact rational in [-bound, bound], uniform over a fine grid."""
    return Fraction(rng.randint(-10**6, 10**6), 10**6) * bound


def gen_example2(q: int, seed: int = 0) -> System:
    """System of q inequalities built from points on three pairwise
    disjoint sixth-circle arcs: (q+3)/2 points a with ``(a, x) > 1`` and,
    strictly between circularly consecutive a-points of the same arc,
    (q-3)/2 points b with ``(b, x) < 1``.

    The construction keeps the number of marked maximal consistent
    subsystems at three while the minimal committee size grows as q.  The
    b-points stand in for arc midpoints with rational circle points
    strictly between their two neighbors; the conclusions depend only on
    betweenness and arc membership, which the generator checks exactly,
    not on metric equidistance.  For q <= 7 the generator additionally
    asserts both target quantities through the exhaustive oracle.
    """
    if q < 5 or q % 2 == 0:
        raise InputError(f"q must be an odd integer >= 5, got {q}")
    rng = random.Random(f"example2:{q}:{seed}")
    p = (q + 3) // 6
    r = ((q + 3) // 2) % 3
    sizes = [p + (1 if i < r else 0) for i in range(3)]
    assert sum(sizes) == (q + 3) // 2

    a_params: list[list[Rat]] = []
    b_params: list[list[Rat]] = []
    for (lo, hi), k in zip(_ARCS, sizes):
        step = (hi - lo) / (k + 1)
        ts = [
            lo + step * (j + 1) + _jitter(rng, step / 4) for j in range(k)
        ]
        assert all(lo < t < hi for t in ts)
        assert all(a < b for a, b in zip(ts, ts[1:]))
        mids = []
        for t1, t2 in zip(ts, ts[1:]):
            tb = (t1 + t2) / 2 + _jitter(rng, (t2 - t1) / 8)
            assert t1 < tb < t2
            mids.append(tb)
        a_params.append(ts)
        b_params.append(mids)

    a_points = [circle_point(t) for ts in a_params for t in ts]
    b_points = [circle_point(t) for ts in b_params for t in ts]
    assert len(a_points) == (q + 3) // 2
    assert len(b_points) == (q - 3) // 2

    # (b, x) < 1 written in the canonical form (-b, x) > -1
    sys = System(
        tuple(Inequality(a.x, a.y, Fraction(1)) for a in a_points)
        + tuple(Inequality(-b.x, -b.y, Fraction(-1)) for b in b_points)
    )
    assert sys.m == q
    if q <= 7:
        report = brute_min_committee(sys, q_max=q)
        assert report.min_committee_size == q, (
            f"three-arc construction: minimal committee "
            f"{report.min_committee_size} != {q}"
        )
        assert len(all_marked_mcs(sys)) == 3
    return sys


# --- random instances -----------------------------------------------------------

def _random_inequality(rng: random.Random) -> Inequality:
    while True:
        cx, cy = rng.randint(-9, 9), rng.randint(-9, 9)
        if cx or cy:
            return Inequality(
                Fraction(cx), Fraction(cy), Fraction(rng.randint(-9, 9))
            )


def _generic_candidate(rng: random.Random, m: int) -> Optional[System]:
    try:
        sys = System(tuple(_random_inequality(rng) for _ in range(m)))
    except DuplicateInequalityError:
        return None
    return sys if is_general_position(sys) else None


def _polygon_candidate(rng: random.Random, m: int) -> Optional[System]:
    """Outward tangent system of a random convex m-gon with vertices on the
    unit circle: the lines bound the polygon (one side per line), the
    centroid violates every inequality, and the system is inconsistent yet
    pairwise consistent."""
    ts = sorted({Fraction(rng.randint(-240, 240), 60) for _ in range(m)})
    if len(ts) != m:
        return None
    verts = [circle_point(t) for t in ts]  # counterclockwise
    ineqs = []
    for k in range(m):
        v, w = verts[k], verts[(k + 1) % m]
        nx, ny = w.y - v.y, v.x - w.x  # outward normal of a ccw polygon
        ineqs.append(Inequality(nx, ny, nx * v.x + ny * v.y))
    if any(
        cross(ineqs[i].normal, ineqs[j].normal) == 0
        for i in range(m)
        for j in range(i + 1, m)
    ):
        return None  # parallel sides: drop rather than risk an opposite pair
    sys = System(tuple(ineqs))
    cx = sum(v.x for v in verts) / m
    cy = sum(v.y for v in verts) / m
    centroid = Point(cx, cy)
    assert all(q.value_at(centroid) < 0 for q in sys.inequalities)
    assert pairwise_inconsistent_pair(sys) is None
    assert find_interior_point(sys.halfplanes()) is None
    return sys


def _with_committee_candidate(
    rng: random.Random, m: int, q_max: int
) -> Optional[System]:
    sys = _generic_candidate(rng, m)
    if sys is None:
        return None
    if find_interior_point(sys.halfplanes()) is not None:
        return None  # consistent: nothing to form a committee over
    if pairwise_inconsistent_pair(sys) is not None:
        return None  # two opposite half-planes can never both get a majority
    report = brute_min_committee(sys, q_max=q_max)
    return sys if report.min_committee_size is not None else None


def gen_random(
    m: int, profile: str = "generic", seed: int = 0, *, q_max: int = 9
) -> System:
    """Seeded random instance.

    - ``generic``: random small-integer inequalities, rejection-sampled to
      general position (pairwise crossing borders, no three concurrent).
    - ``polygon``: outward tangent system of a random convex m-gon — the
      inputs the polygon algorithm is for.
    - ``with-committee``: generic, additionally inconsistent and known (by
      the exhaustive oracle) to admit a committee of at most ``q_max``
      members.

    Deterministic in ``(m, profile, seed)``; raises after 1000 rejected
    candidates.
    """
    if profile not in PROFILES:
        raise InputError(f"unknown profile {profile!r}; want one of "
                         f"{', '.join(PROFILES)}")
    if m < 3:
        raise InputError(f"random instances need m >= 3, got {m}")
    rng = random.Random(f"random:{m}:{profile}:{seed}")
    for _ in range(_MAX_ATTEMPTS):
        if profile == "generic":
            sys = _generic_candidate(rng, m)
        elif profile == "polygon":
            sys = _polygon_candidate(rng, m)
        else:
            sys = _with_committee_candidate(rng, m, q_max)
        if sys is not None:
            return sys
    raise GenerationTimeoutError(
        f"no {profile} instance with m={m} found in {_MAX_ATTEMPTS} attempts",
        m=m,
        profile=profile,
        seed=seed,
    )
