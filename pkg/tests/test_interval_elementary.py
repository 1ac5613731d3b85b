"""
Tests for certified pi / exp / cos enclosures and ball volumes.

mpmath at 60 digits is the reference value.
"""

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.errors import InputError, PrecisionUnreachable
from app.interval.elementary import (
    ball_volume_factor,
    enclose_ball_volume,
    enclose_cos,
    enclose_elementary,
    enclose_exp,
    enclose_exp_relative,
    enclose_pi,
)
from app.interval.interval import Interval

mpmath.mp.dps = 60


def mp(q: Fraction) -> mpmath.mpf:
    return mpmath.mpf(q.numerator) / q.denominator


def encloses(box: Interval, value: mpmath.mpf) -> bool:
    return mp(box.lo) <= value <= mp(box.hi)


# ---------------------------------------------------------------------------
# pi
# ---------------------------------------------------------------------------

class TestPi:
    @pytest.mark.parametrize("width", [Fraction(1, 10**3), Fraction(1, 10**12), Fraction(1, 10**30)])
    def test_width_and_containment(self, width):
        box = enclose_pi(width)
        assert box.width <= width
        assert encloses(box, mpmath.pi)

    def test_rejects_non_positive_width(self):
        with pytest.raises(InputError):
            enclose_pi(0)


# ---------------------------------------------------------------------------
# exp
# ---------------------------------------------------------------------------

class TestExp:
    def test_exp_zero_is_exact(self):
        assert enclose_exp(Interval.point(0)) == Interval.point(1)

    @pytest.mark.parametrize("x", ["1", "-5", "7/3", "-1/1000", "20"])
    def test_points(self, x):
        q = Fraction(x)
        box = enclose_exp(Interval.point(q), Fraction(1, 10**15))
        assert encloses(box, mpmath.exp(mp(q)))
        assert box.width <= Fraction(1, 10**15) * max(1, box.hi)

    def test_interval_argument_is_monotone_hull(self):
        box = enclose_exp(Interval(-1, 1))
        assert encloses(box, mpmath.exp(-1))
        assert encloses(box, mpmath.e)

    def test_huge_argument(self):
        with pytest.raises(PrecisionUnreachable):
            enclose_exp(Interval.point(10**7))

    @pytest.mark.parametrize("x", ["-113/2", "-20", "-3/7"])
    def test_relative_width_far_below_one(self, x):
        q = Fraction(x)
        box = enclose_exp_relative(q, Fraction(1, 10**6))
        assert encloses(box, mpmath.exp(mp(q)))
        assert box.width <= Fraction(1, 10**6) * box.lo

    def test_relative_rejects_bad_tolerance(self):
        with pytest.raises(InputError):
            enclose_exp_relative(1, 0)


# ---------------------------------------------------------------------------
# cos
# ---------------------------------------------------------------------------

class TestCos:
    @given(st.fractions(min_value=-40, max_value=40, max_denominator=1000))
    @settings(max_examples=80, deadline=None)
    def test_points(self, t):
        box = enclose_cos(Interval.point(t), Fraction(1, 10**12))
        assert encloses(box, mpmath.cos(mp(t)))
        assert box.width <= Fraction(1, 10**12)

    def test_sixth_of_a_turn(self):
        arg = enclose_pi(Fraction(1, 10**20)) * Fraction(1, 3)
        box = enclose_cos(arg, Fraction(1, 10**12))
        assert box.contains(Fraction(1, 2))

    def test_arc_bound(self):
        arg = enclose_pi(Fraction(1, 10**20)) * 2 * Fraction(152, 1000)
        box = enclose_cos(arg, Fraction(1, 10**6))
        assert box.lo > Fraction(575, 1000)
        assert box.width <= Fraction(1, 10**6)

    def test_critical_point_inside(self):
        box = enclose_cos(Interval(3, Fraction(33, 10)))
        assert box.lo == -1

    def test_wide_argument(self):
        assert enclose_cos(Interval(0, 7)) == Interval(-1, 1)

    def test_dispatch(self):
        x = Interval.point(Fraction(1, 2))
        assert enclose_elementary(x, "cos") == enclose_cos(x)
        assert enclose_elementary(x, "exp") == enclose_exp(x)
        with pytest.raises(InputError):
            enclose_elementary(x, "sin")


# ---------------------------------------------------------------------------
# Tightening
# ---------------------------------------------------------------------------

WIDTHS = [Fraction(1, 10**k) for k in (2, 6, 12, 24)]


class TestTightening:
    @pytest.mark.parametrize(
        "enclose, exact",
        [
            (enclose_pi, mpmath.pi),
            (lambda w: enclose_exp(Interval.point(Fraction(7, 3)), w), mpmath.exp(mpmath.mpf(7) / 3)),
            (lambda w: enclose_cos(Interval.point(Fraction(5, 2)), w), mpmath.cos(mpmath.mpf(5) / 2)),
        ],
        ids=["pi", "exp", "cos"],
    )
    def test_narrower_request_gives_narrower_enclosure(self, enclose, exact):
        boxes = [enclose(w) for w in WIDTHS]
        for box, width in zip(boxes, WIDTHS):
            assert box.width <= width * max(1, box.hi)
            assert encloses(box, exact)
        for wide, narrow in zip(boxes, boxes[1:]):
            assert narrow.width <= wide.width
            assert wide.intersects(narrow)


# ---------------------------------------------------------------------------
# Ball volumes
# ---------------------------------------------------------------------------

class TestBallVolume:
    @pytest.mark.parametrize(
        "n, factor",
        [(1, (Fraction(2), 0)), (2, (Fraction(1), 1)), (3, (Fraction(4, 3), 1)), (8, (Fraction(1, 24), 4))],
    )
    def test_exact_factor(self, n, factor):
        assert ball_volume_factor(n) == factor

    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 24])
    def test_unit_ball_matches_gamma_formula(self, n):
        box = enclose_ball_volume(n, Interval.point(1), Fraction(1, 10**12))
        exact = mpmath.pi ** (mpmath.mpf(n) / 2) / mpmath.gamma(mpmath.mpf(n) / 2 + 1)
        assert encloses(box, exact)
        assert box.width <= Fraction(1, 10**12)

    def test_half_radius_in_the_plane(self):
        box = enclose_ball_volume(2, Interval.point(Fraction(1, 2)))
        assert encloses(box, mpmath.pi / 4)

    def test_invalid(self):
        with pytest.raises(InputError):
            ball_volume_factor(0)
        with pytest.raises(InputError):
            enclose_ball_volume(2, Interval(-1, 1))
