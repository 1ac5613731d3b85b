"""
Tests for the exact core: rationals, polynomials, small matrices.

sympy serves as the oracle for arithmetic, division and determinants.
"""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from app.errors import InputError, NotPositiveDefinite, SingularBasis, ZeroPolynomial
from app.exact.matrix import as_matrix, determinant, identity, inverse, ldl, matmul, nullspace
from app.exact.polynomial import (
    Polynomial,
    polynomial_arithmetic,
    polynomial_gcd,
    proportional,
    squarefree_part,
)
from app.exact.rational import decimal_string, format_rational, label_rational, parse_rational

U = sympy.Symbol("u")

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=20)
coefficients = st.lists(fractions, min_size=0, max_size=6)


def to_sympy(p: Polynomial) -> sympy.Poly:
    return sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * U**i for i, c in enumerate(p.coeffs)), U, domain="QQ")


def from_sympy(poly: sympy.Poly) -> Polynomial:
    coeffs = list(reversed(poly.all_coeffs()))
    return Polynomial(Fraction(int(c.p), int(c.q)) for c in coeffs)


# ---------------------------------------------------------------------------
# Rationals
# ---------------------------------------------------------------------------

class TestRationals:
    def test_terminating_decimal_is_exact(self):
        assert parse_rational("1.084") == Fraction(271, 250)

    def test_fraction_and_integer_literals(self):
        assert parse_rational("12/47") == Fraction(12, 47)
        assert parse_rational(-216) == Fraction(-216)
        assert parse_rational(" 3 ") == 3

    @pytest.mark.parametrize("bad", [1.5, True, "", "abc", "1/0", None])
    def test_rejects_non_rationals(self, bad):
        with pytest.raises(InputError):
            parse_rational(bad)

    def test_wire_format_always_has_denominator(self):
        assert format_rational(-216) == "-216/1"
        assert format_rational(Fraction(24, 35)) == "24/35"

    def test_label_prefers_short_decimals(self):
        assert label_rational(Fraction(271, 250)) == "1.084"
        assert label_rational(Fraction(12, 47)) == "12/47"
        assert label_rational(7) == "7"

    def test_decimal_string_rounds_toward_zero(self):
        assert decimal_string(Fraction(2, 3), 4) == "0.6666"
        assert decimal_string(Fraction(-2, 3), 4) == "-0.6666"


# ---------------------------------------------------------------------------
# Polynomial arithmetic
# ---------------------------------------------------------------------------

class TestPolynomialShape:
    def test_trailing_zeros_stripped(self):
        p = Polynomial([1, 2, 0, 0])
        assert p.degree == 1
        assert p == Polynomial([1, 2])

    def test_zero_polynomial(self):
        z = Polynomial()
        assert z.is_zero
        assert z.degree == -1
        assert z.leading == 0

    def test_json_round_trip_uses_wire_format(self):
        p = Polynomial.from_json(["20812", "756", "1107", "-216"])
        assert p.to_json() == ["20812/1", "756/1", "1107/1", "-216/1"]

    def test_from_json_rejects_scalars(self):
        with pytest.raises(InputError):
            Polynomial.from_json("1,2,3")


class TestPolynomialArithmetic:
    @given(coefficients, coefficients)
    @settings(max_examples=60, deadline=None)
    def test_product_matches_sympy(self, a, b):
        p, q = Polynomial(a), Polynomial(b)
        expected = to_sympy(p) * to_sympy(q)
        assert p * q == from_sympy(expected)

    @given(coefficients, coefficients.filter(lambda c: any(x != 0 for x in c)))
    @settings(max_examples=60, deadline=None)
    def test_division_identity(self, a, b):
        p, d = Polynomial(a), Polynomial(b)
        q, r = p.divmod(d)
        assert q * d + r == p
        assert r.degree < d.degree

    def test_division_by_zero_polynomial(self):
        with pytest.raises(ZeroPolynomial):
            Polynomial([1, 1]).divmod(Polynomial())

    def test_derivative_and_evaluate(self):
        p = Polynomial([20812, 756, 1107, -216])
        assert p.derivative() == Polynomial([756, 2214, -648])
        assert p.evaluate(0) == 20812
        assert p(Fraction(1, 2)) == 20812 + 378 + Fraction(1107, 4) - 27

    def test_compose_affine(self):
        p = Polynomial([0, 0, 1])
        assert p.compose_affine(2, 1) == Polynomial([1, 4, 4])

    def test_power(self):
        assert Polynomial([1, 1]) ** 3 == Polynomial([1, 3, 3, 1])
        assert Polynomial([5]) ** 0 == Polynomial([1])

    def test_primitive_clears_denominators(self):
        p = Polynomial([Fraction(1, 2), Fraction(-3, 4)])
        assert p.primitive() == Polynomial([2, -3])

    def test_proportional(self):
        p = Polynomial([20812, 756, 1107, -216])
        assert proportional(p.scale(Fraction(-3, 7)), p)
        assert not proportional(p + 1, p)
        assert proportional(Polynomial(), Polynomial())


class TestGcdAndSquarefree:
    def test_gcd_is_monic(self):
        a = Polynomial.from_roots([1, 2], leading=3)
        b = Polynomial.from_roots([2, 5], leading=-7)
        assert polynomial_gcd(a, b) == Polynomial.from_roots([2])

    def test_squarefree_part_drops_multiplicity(self):
        p = Polynomial.from_roots([1, 1, -2], leading=4)
        assert squarefree_part(p) == Polynomial.from_roots([1, -2])

    def test_squarefree_part_of_zero(self):
        with pytest.raises(ZeroPolynomial):
            squarefree_part(Polynomial())


class TestPolynomialDispatch:
    def test_each_operation(self):
        p, q = Polynomial([1, 2]), Polynomial([0, 1])
        assert polynomial_arithmetic(p, q, "add") == Polynomial([1, 3])
        assert polynomial_arithmetic(p, q, "multiply") == Polynomial([0, 1, 2])
        assert polynomial_arithmetic(p, op="scale", scalar="1/2") == Polynomial([Fraction(1, 2), 1])
        assert polynomial_arithmetic(p, op="derivative") == Polynomial([2])
        assert polynomial_arithmetic(p, op="evaluate", scalar=3) == 7
        assert polynomial_arithmetic(p, op="compose-affine", affine=(2, 1)) == Polynomial([3, 4])

    def test_missing_operand(self):
        with pytest.raises(InputError):
            polynomial_arithmetic(Polynomial([1]), op="add")

    def test_unknown_operation(self):
        with pytest.raises(InputError):
            polynomial_arithmetic(Polynomial([1]), op="integrate")


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

class TestMatrix:
    @given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=3))
    @settings(max_examples=50, deadline=None)
    def test_determinant_matches_sympy(self, rows):
        assert determinant(as_matrix(rows)) == int(sympy.Matrix(rows).det())

    def test_inverse(self):
        m = as_matrix([[2, 1], [1, 2]])
        assert matmul(m, inverse(m)) == identity(2)

    def test_singular_inverse(self):
        with pytest.raises(SingularBasis):
            inverse(as_matrix([[1, 2], [2, 4]]))

    def test_nullspace(self):
        basis = nullspace([[Fraction(1), Fraction(1), Fraction(0)]], 3)
        assert len(basis) == 2
        for v in basis:
            assert v[0] + v[1] == 0

    def test_ldl_of_hexagonal_gram(self):
        lower, d = ldl(as_matrix([[2, 1], [1, 2]]))
        assert d == (2, Fraction(3, 2))
        assert lower[1][0] == Fraction(1, 2)

    def test_ldl_rejects_indefinite(self):
        with pytest.raises(NotPositiveDefinite):
            ldl(as_matrix([[1, 2], [2, 1]]))
