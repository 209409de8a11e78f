"""Tests for the committee builders: the general three-step construction,
the three-member construction, its criterion, and the two check operations."""
import random
from fractions import Fraction

import pytest

from planecommittee.committee import (
    GeneralPositionSystem,
    build_committee,
    corollary41_check,
    prop43_check,
    three_committee,
    three_committee_criterion,
)
from planecommittee.errors import (
    ConsistentSystemError,
    InputError,
    InternalError,
    NotGeneralPositionError,
    OriginOnBoundaryError,
    PlaneCommitteeError,
    WrongCardinalityError,
)
from planecommittee.geometry import Point, find_interior_point
from planecommittee.oracle import (
    brute_min_committee,
    is_general_position,
    verify_committee,
)
from planecommittee.polar import System

from conftest import ineq, pt

F = Fraction


def gp(sys: System) -> GeneralPositionSystem:
    return GeneralPositionSystem(sys)


@pytest.fixture(scope="module")
def r1():
    # four half-planes where one satisfied-at-origin inequality lacks its
    # majority after the directional stage, forcing one repair round
    return System(
        [ineq(-1, -4, -1), ineq(-1, 0, 1), ineq(-1, 1, -1), ineq(4, 2, 3)]
    )


@pytest.fixture(scope="module")
def s1():
    # seven half-planes where a repair round's two additions vote against
    # satisfied points that formerly had their majority, forcing the second
    # angular split (four additions in one round)
    return System(
        [
            ineq(-5, -4, -1),
            ineq(1, 4, -2),
            ineq(0, -4, 4),
            ineq(4, -2, -1),
            ineq(3, -4, -3),
            ineq(-1, 3, 2),
            ineq(1, -4, 2),
        ]
    )


# --- general-position certificate -------------------------------------------


def test_general_position_accepts(t1, p5):
    gp(t1)
    gp(p5)


def test_general_position_needs_three():
    with pytest.raises(NotGeneralPositionError):
        gp(System([ineq(1, 0, 0), ineq(0, 1, 0)]))


def test_general_position_rejects_parallels():
    with pytest.raises(NotGeneralPositionError):
        gp(System([ineq(1, 0, 0), ineq(1, 0, 1), ineq(0, 1, 0)]))


def test_general_position_rejects_concurrency():
    with pytest.raises(NotGeneralPositionError):
        gp(System([ineq(1, 0, 0), ineq(0, 1, 0), ineq(1, 1, 0)]))


# --- build_committee ---------------------------------------------------------


def test_build_triple_at_origin(t1):
    K, st = build_committee(gp(t1), pt(0, 0))
    assert K.size == 3
    assert st.rounds == ()
    assert st.remaining == ()
    assert verify_committee(t1, K) == (True, [2, 2, 2])
    assert st.committee_so_far.size == 3


def test_build_pentagon_at_origin(p5):
    K, st = build_committee(gp(p5), pt(0, 0))
    assert K.size == 5
    assert st.rounds == ()
    ok, votes = verify_committee(p5, K)
    assert ok and votes == [3, 3, 3, 3, 3]


def test_build_triple_off_center(t1):
    # at z = (5,6) only inequality 3 is violated; the single directional
    # member leaves inequality 2 unserved, and one round repairs it
    K, st = build_committee(gp(t1), pt(5, 6))
    assert K.size == 3
    assert len(st.rounds) == 1
    r = st.rounds[0]
    assert r.chosen_b == 2
    assert r.a1 == () and r.a2 == (3,)
    assert r.b1 == (2,)
    assert len(r.added) == 2 and not r.second
    assert r.excluded == (2,)
    assert st.remaining == ()
    assert verify_committee(t1, K)[0]


def test_build_round_instance(r1):
    K, st = build_committee(gp(r1), pt(0, 0))
    assert K.size == 3
    assert len(st.rounds) == 1
    r = st.rounds[0]
    assert r.chosen_b == 1
    assert r.a1 == (2,) and r.a2 == (4,)
    assert len(r.added) == 2 and not r.second
    assert r.excluded == (1,)
    assert verify_committee(r1, K)[0]
    assert brute_min_committee(r1).min_committee_size == 3


def test_build_round_instance_cumulative(r1):
    K, st = build_committee(gp(r1), pt(0, 0), exclusion_mode="cumulative")
    assert K.size == 3
    assert verify_committee(r1, K)[0]


def test_build_second_split_instance(s1):
    K, st = build_committee(gp(s1), pt(0, 0))
    assert K.size == 5
    assert len(st.rounds) == 1
    r = st.rounds[0]
    assert r.second and len(r.added) == 4
    assert r.gamma is not None
    assert verify_committee(s1, K)[0]
    assert brute_min_committee(s1).min_committee_size == 5


def test_build_second_split_needs_full_trigger(s1):
    # restricting the second-split trigger to the still-unserved points
    # misses the satisfied points that the round's additions newly oppose,
    # and the undersized collection is caught by the final verification
    with pytest.raises(InternalError):
        build_committee(gp(s1), pt(0, 0), b2_source="remaining")


def test_build_rejects_bad_flags(t1):
    with pytest.raises(InputError):
        build_committee(gp(t1), pt(0, 0), b2_source="sometimes")
    with pytest.raises(InputError):
        build_committee(gp(t1), pt(0, 0), exclusion_mode="never")


def test_build_rejects_origin_on_border(t1):
    with pytest.raises(OriginOnBoundaryError) as ei:
        build_committee(gp(t1), pt(1, 0))
    assert ei.value.data == {"j": 1}


def test_build_rejects_consistent():
    sys = System([ineq(1, 0, 0), ineq(0, 1, 0), ineq(1, 1, -3)])
    with pytest.raises(ConsistentSystemError):
        build_committee(gp(sys), pt(-1, -1))


def test_build_members_solve_maximal_sets(t1):
    # at the center, the three members are the three marked MCS solutions
    K, _ = build_committee(gp(t1), pt(0, 0))
    patterns = set()
    for g, _n in K.with_multiplicity():
        patterns.add(
            tuple(j for j in t1.indices() if t1.ineq(j).satisfied_at(g))
        )
    assert patterns == {(1, 2), (1, 3), (2, 3)}


# --- three_committee ---------------------------------------------------------


def test_three_committee_triple(t1):
    K = three_committee(t1)
    assert K is not None and K.size == 3
    assert verify_committee(t1, K) == (True, [2, 2, 2])


def test_three_committee_pentagon(p5):
    assert three_committee(p5) is None


def test_three_committee_small_always_succeeds(r1):
    # inconsistent, pairwise consistent, m = 4: a 3-committee always exists
    K = three_committee(r1)
    assert K is not None and verify_committee(r1, K)[0]


# --- criterion and corollary -------------------------------------------------


def test_criterion_triple_vacuous(t1):
    assert three_committee_criterion(t1) is True


def test_criterion_pentagon(p5):
    assert three_committee_criterion(p5) is False


def test_criterion_seven(s1):
    # the second-split instance has minimal committee 5, so no 3-committee
    assert three_committee_criterion(s1) is False
    assert three_committee(s1) is None


def test_corollary41_pentagon(p5):
    # any maximal consistent triple has cardinality 3 = m - 2
    assert corollary41_check(p5, [1, 2, 3]) is False
    assert corollary41_check(p5, [1, 2, 3]) == three_committee_criterion(p5)


def test_corollary41_rejects_wrong_cardinality(p5):
    with pytest.raises(WrongCardinalityError):
        corollary41_check(p5, [1, 2])


def test_corollary41_rejects_non_mcs(p5):
    # {1,2,4} has the right cardinality but is inconsistent (not an MCS)
    with pytest.raises(WrongCardinalityError):
        corollary41_check(p5, [1, 2, 4])


def test_corollary41_rejects_non_maximal():
    # consistent but extendable: {1,2} extends with 3 to {1,2,3}
    sys = System(
        [ineq(1, 0, 1), ineq(0, 1, 1), ineq(1, 1, 3), ineq(-1, -1, 0)]
    )
    with pytest.raises(WrongCardinalityError):
        corollary41_check(sys, [1, 2])


# --- prop43_check ------------------------------------------------------------


def test_prop43_triple(t1):
    assert prop43_check(gp(t1), pt(0, 0)) is True


def test_prop43_pentagon_vacuous(p5):
    assert prop43_check(gp(p5), pt(0, 0)) is True


# --- randomized soundness ----------------------------------------------------


def _random_gp_inconsistent(rng, m_range=(4, 7)):
    z = pt(0, 0)
    while True:
        m = rng.randint(*m_range)
        rows = [
            (rng.randint(-5, 5), rng.randint(-5, 5), rng.randint(-4, 4))
            for _ in range(m)
        ]
        if any((a, b) == (0, 0) for a, b, _ in rows):
            continue
        try:
            sys = System([ineq(*row) for row in rows])
        except PlaneCommitteeError:
            continue
        if any(q.value_at(z) == 0 for q in sys.inequalities):
            continue
        if find_interior_point(sys.halfplanes()) is not None:
            continue
        if not is_general_position(sys):
            continue
        return sys


def test_build_committee_random_soundness():
    rng = random.Random("committee-soundness")
    for _ in range(40):
        sys = _random_gp_inconsistent(rng)
        K, st = build_committee(gp(sys), pt(0, 0))
        ok, _ = verify_committee(sys, K)
        assert ok
        assert K.size % 2 == 1
        for r in st.rounds:
            assert len(r.added) in (2, 4)
            assert r.excluded


def test_three_committee_equivalences_random():
    # existence of a 3-committee, the five-contain-four criterion, and the
    # oracle minimum agree on every instance
    rng = random.Random("three-equivalence")
    for _ in range(40):
        sys = _random_gp_inconsistent(rng, m_range=(4, 6))
        got = three_committee(sys)
        crit = three_committee_criterion(sys)
        oracle = brute_min_committee(sys)
        assert crit == (got is not None)
        assert crit == (oracle.min_committee_size <= 3)
        if got is not None:
            assert got.size == 3 and verify_committee(sys, got)[0]


def test_prop43_random():
    rng = random.Random("prop43")
    for _ in range(25):
        sys = _random_gp_inconsistent(rng, m_range=(4, 6))
        assert prop43_check(gp(sys), pt(0, 0)) is True


def test_corollary41_equivalence_random():
    # whenever some MCS has cardinality m - 2, the restricted criterion must
    # agree with the full one
    from planecommittee.oracle import brute_mcs

    rng = random.Random("cor41")
    found = 0
    while found < 12:
        sys = _random_gp_inconsistent(rng, m_range=(5, 6))
        big = [t for t in brute_mcs(sys) if len(t) == sys.m - 2]
        if not big:
            continue
        found += 1
        assert corollary41_check(sys, big[0]) == three_committee_criterion(
            sys
        )
