"""
Tests for rational interval arithmetic and the strict-inequality protocol.

Inclusion is checked against exact point arithmetic: every operation on
intervals must contain the result of the same operation on members.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.errors import DivisionByIntervalContainingZero, InputError, SqrtOfNegative
from app.exact.polynomial import Polynomial
from app.interval.compare import FALSIFIED, INCONCLUSIVE, VERIFIED, certify_less, decide_less
from app.interval.elementary import enclose_pi
from app.interval.interval import Interval, enclose_sqrt_rational, eval_polynomial, interval_arithmetic

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=50)


@st.composite
def interval_with_member(draw):
    a, b = draw(rationals), draw(rationals)
    lo, hi = min(a, b), max(a, b)
    t = draw(st.fractions(min_value=0, max_value=1, max_denominator=16))
    return Interval(lo, hi), lo + t * (hi - lo)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

class TestConstruction:
    def test_empty_interval_rejected(self):
        with pytest.raises(InputError):
            Interval(2, 1)

    def test_point_and_shape(self):
        x = Interval("1/3", "1/2")
        assert x.width == Fraction(1, 6)
        assert x.mid == Fraction(5, 12)
        assert Interval.point(3).is_point
        assert Interval(-3, 2).mag == 3

    def test_json(self):
        assert Interval("1.5", 2).to_json() == ["3/2", "2/1"]
        assert Interval.from_json(["1/2", "1"]) == Interval(Fraction(1, 2), 1)
        assert Interval.from_json("7") == Interval.point(7)

    def test_simplify_rounds_outward(self):
        x = Interval(Fraction(1, 3), Fraction(2, 3))
        y = x.simplify(10)
        assert y.contains(x)
        assert y.lo.denominator <= 1024 and y.hi.denominator <= 1024


# ---------------------------------------------------------------------------
# Inclusion
# ---------------------------------------------------------------------------

class TestInclusion:
    @given(interval_with_member(), interval_with_member())
    @settings(max_examples=100, deadline=None)
    def test_ring_operations(self, xa, yb):
        (x, a), (y, b) = xa, yb
        assert (x + y).contains(a + b)
        assert (x - y).contains(a - b)
        assert (x * y).contains(a * b)

    @given(interval_with_member(), interval_with_member())
    @settings(max_examples=100, deadline=None)
    def test_division_when_defined(self, xa, yb):
        (x, a), (y, b) = xa, yb
        if y.lo <= 0 <= y.hi:
            with pytest.raises(DivisionByIntervalContainingZero):
                x / y
        else:
            assert (x / y).contains(a / b)

    @given(interval_with_member(), st.integers(0, 5))
    @settings(max_examples=60, deadline=None)
    def test_power(self, xa, k):
        x, a = xa
        assert (x**k).contains(a**k)

    def test_even_power_across_zero(self):
        assert Interval(-2, 1) ** 2 == Interval(0, 4)

    @given(interval_with_member(), st.sampled_from(["1", "1/2", "1.3", "12/47"]))
    @settings(max_examples=60, deadline=None)
    def test_polynomial_enclosure(self, xa, u):
        x, a = xa
        p = Polynomial([20812, 756, 1107, -216]).compose_affine(1, u)
        assert eval_polynomial(p, x).contains(p.evaluate(a))


@st.composite
def interval_with_subinterval(draw):
    big, a = draw(interval_with_member())
    t = draw(st.fractions(min_value=0, max_value=1, max_denominator=16))
    b = big.lo + t * (big.hi - big.lo)
    return big, Interval(min(a, b), max(a, b))


BINARY_OPS = ["add", "sub", "mul", "div", "min", "max"]


class TestInclusionMonotone:
    @given(interval_with_subinterval(), interval_with_subinterval(), st.sampled_from(BINARY_OPS))
    @settings(max_examples=300, deadline=None)
    def test_binary(self, xs, ys, op):
        (big_x, x), (big_y, y) = xs, ys
        if op == "div" and big_y.lo <= 0 <= big_y.hi:
            return
        assert interval_arithmetic(big_x, big_y, op).contains(interval_arithmetic(x, y, op))

    @given(interval_with_subinterval())
    @settings(max_examples=200, deadline=None)
    def test_sqrt(self, xs):
        big, x = xs
        if big.lo < 0:
            big, x = big**2, x**2
        assert big.sqrt(32).contains(x.sqrt(32))


@pytest.mark.slow
class TestInclusionFuzz:
    @given(interval_with_member(), interval_with_member(), st.sampled_from(BINARY_OPS))
    @settings(max_examples=10_000, deadline=None)
    def test_binary_ops(self, xa, yb, op):
        (x, a), (y, b) = xa, yb
        if op == "div" and y.lo <= 0 <= y.hi:
            return
        exact = {
            "add": a + b,
            "sub": a - b,
            "mul": a * b,
            "div": a / b if b else None,
            "min": min(a, b),
            "max": max(a, b),
        }[op]
        assert interval_arithmetic(x, y, op).contains(exact)

    @given(interval_with_member())
    @settings(max_examples=10_000, deadline=None)
    def test_sqrt(self, xa):
        x, a = xa
        if x.lo < 0:
            x, a = x**2, a * a
        r = x.sqrt(40)
        assert r.lo >= 0
        assert r.lo**2 <= a <= r.hi**2


class TestDivisionByZero:
    def test_is_a_zero_division_error(self):
        with pytest.raises(ZeroDivisionError):
            Interval(1) / Interval(-1, 1)

    def test_endpoint_zero(self):
        with pytest.raises(DivisionByIntervalContainingZero):
            Interval(0, 1).reciprocal()


# ---------------------------------------------------------------------------
# Roots
# ---------------------------------------------------------------------------

class TestRoots:
    def test_sqrt_two(self):
        r = enclose_sqrt_rational(2, 64)
        assert r.lo**2 <= 2 <= r.hi**2
        assert r.width <= Fraction(1, 2**64)

    def test_perfect_square_is_exact(self):
        assert enclose_sqrt_rational("9/4") == Interval.point(Fraction(3, 2))

    def test_fourth_root(self):
        r = Interval.point(Fraction(4, 3)).root(4, 60)
        assert r.lo**4 <= Fraction(4, 3) <= r.hi**4
        assert r.width <= Fraction(1, 2**59)

    def test_sqrt_of_negative(self):
        with pytest.raises(SqrtOfNegative):
            Interval(-1, 4).sqrt()

    def test_root_order_must_be_positive(self):
        with pytest.raises(InputError):
            Interval(1).root(0)


class TestDispatch:
    def test_binary_and_unary_ops(self):
        a, b = Interval(1, 2), Interval(3, 4)
        assert interval_arithmetic(a, b, "add") == Interval(4, 6)
        assert interval_arithmetic(a, b, "sub") == Interval(-3, -1)
        assert interval_arithmetic(a, b, "mul") == Interval(3, 8)
        assert interval_arithmetic(a, b, "div") == Interval(Fraction(1, 4), Fraction(2, 3))
        assert interval_arithmetic(a, b, "min") == a
        assert interval_arithmetic(a, b, "max") == b
        assert interval_arithmetic(Interval(-1, 2), op="pow", exponent=2) == Interval(0, 4)
        assert interval_arithmetic(Interval(4), op="sqrt") == Interval(2)

    @pytest.mark.parametrize("op", ["add", "log"])
    def test_bad_calls(self, op):
        with pytest.raises(InputError):
            interval_arithmetic(Interval(1), op=op)


# ---------------------------------------------------------------------------
# Strict comparisons
# ---------------------------------------------------------------------------

class TestCertifyLess:
    def test_decide(self):
        assert decide_less(Interval(0, 1), Interval(2, 3)) is True
        assert decide_less(Interval(2, 3), Interval(0, 1)) is False
        assert decide_less(Interval(0, 2), Interval(1, 3)) is None

    def test_points(self):
        assert certify_less(1, 2).verdict == VERIFIED
        assert certify_less(2, 1).verdict == FALSIFIED
        assert certify_less(1, 1).verdict == FALSIFIED

    def test_refines_callables(self):
        cmp = certify_less(lambda w: enclose_pi(w), Fraction(355, 113), target_width=Fraction(1, 10))
        assert cmp.verdict == VERIFIED
        assert cmp.target_width < Fraction(1, 10)

    def test_fixed_overlap_is_inconclusive(self):
        assert certify_less(Interval(0, 2), Interval(1, 3)).verdict == INCONCLUSIVE

    def test_indistinguishable_values_stay_inconclusive(self):
        cmp = certify_less(lambda w: enclose_pi(w), lambda w: enclose_pi(w), max_refine=2)
        assert cmp.verdict == INCONCLUSIVE
        assert not cmp.verified

    def test_json(self):
        data = certify_less(1, 2, label="1 < 2").to_json()
        assert data == {"claim": "1 < 2", "verdict": VERIFIED, "lhs": ["1/1", "1/1"], "rhs": ["2/1", "2/1"]}
