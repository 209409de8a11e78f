"""Shared fixtures: canonical instances used across the test suite."""
from __future__ import annotations

from fractions import Fraction as F

import pytest

from planecommittee.geometry import Point
from planecommittee.polar import Inequality, System


def pt(x, y) -> Point:
    return Point(F(x), F(y))


def ineq(cx, cy, b, strict=True) -> Inequality:
    return Inequality(F(cx), F(cy), F(b), strict)


@pytest.fixture(scope="session")
def t1() -> System:
    """Three unit-normal half-planes at mutual angle ~127 degrees, all
    avoiding a disk around the origin; the smallest inconsistent system
    with a 3-member committee."""
    return System(
        (
            ineq(1, 0, 1),
            ineq(F(-3, 5), F(4, 5), 1),
            ineq(F(-3, 5), F(-4, 5), 1),
        )
    )


# exact unit vectors near angles 0, 72, 144, 216, 288 degrees
# (tan-half-angle points: t = 0, 29/40, 40/13, -40/13, -29/40)
P5_NORMALS = [
    (F(1), F(0)),
    (F(759, 2441), F(2320, 2441)),
    (F(-1431, 1769), F(1040, 1769)),
    (F(-1431, 1769), F(-1040, 1769)),
    (F(759, 2441), F(-2320, 2441)),
]


@pytest.fixture(scope="session")
def p5() -> System:
    """Regular-pentagon pattern: five near-equiangular unit normals, every
    inequality (c, x) > 1. MCSs are the five adjacent triples and the
    minimal committee has five members."""
    return System(tuple(Inequality(cx, cy, F(1)) for cx, cy in P5_NORMALS))
