"""
Exact Polynomial Algebra

Univariate polynomials in u with Fraction coefficients, lowest degree first.
Pure math, no floats and no IO. Every result is exact and replayable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from ..errors import InputError, ZeroPolynomial
from .rational import RationalLike, format_rational, parse_rational


def _strip(coeffs: Iterable[Fraction]) -> tuple[Fraction, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class Polynomial:
    """p(u) = sum coeffs[i] * u**i; the zero polynomial has no coefficients."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        object.__setattr__(self, "coeffs", _strip(parse_rational(c) for c in coeffs))

    # -----------------------------------------------------------------------
    # Constructors
    # -----------------------------------------------------------------------

    @classmethod
    def constant(cls, c: RationalLike) -> Polynomial:
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c: RationalLike = 1) -> Polynomial:
        return cls([0] * degree + [c])

    @classmethod
    def linear(cls, slope: RationalLike, intercept: RationalLike) -> Polynomial:
        """slope*u + intercept."""
        return cls([intercept, slope])

    @classmethod
    def from_roots(cls, roots: Iterable[RationalLike], leading: RationalLike = 1) -> Polynomial:
        p = cls.constant(leading)
        for r in roots:
            p = p * cls([-parse_rational(r), 1])
        return p

    @classmethod
    def from_json(cls, data: Sequence[str | int]) -> Polynomial:
        if not isinstance(data, (list, tuple)):
            raise InputError("polynomial must be a coefficient array, lowest degree first")
        return cls(data)

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    # -----------------------------------------------------------------------
    # Shape
    # -----------------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    # -----------------------------------------------------------------------
    # Arithmetic
    # -----------------------------------------------------------------------

    def __add__(self, other: Polynomial | RationalLike) -> Polynomial:
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.coefficient(i) + other.coefficient(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other: Polynomial | RationalLike) -> Polynomial:
        return self + (-_coerce(other))

    def __rsub__(self, other: RationalLike) -> Polynomial:
        return _coerce(other) - self

    def __mul__(self, other: Polynomial | RationalLike) -> Polynomial:
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: RationalLike) -> Polynomial:
        c = parse_rational(c)
        return Polynomial(c * a for a in self.coeffs)

    def derivative(self) -> Polynomial:
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def __call__(self, x: RationalLike) -> Fraction:
        return self.evaluate(x)

    def evaluate(self, x: RationalLike) -> Fraction:
        x = parse_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_affine(self, a: RationalLike, b: RationalLike) -> Polynomial:
        """u -> p(a*u + b)."""
        inner = Polynomial.linear(a, b)
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def divmod(self, divisor: Polynomial) -> tuple[Polynomial, Polynomial]:
        if divisor.is_zero:
            raise ZeroPolynomial("division by the zero polynomial")
        rem = list(self.coeffs)
        dd = divisor.degree
        lead = divisor.leading
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            q = rem[k] / lead
            quot[k - dd] = q
            if q:
                for j, c in enumerate(divisor.coeffs):
                    rem[k - dd + j] -= q * c
        return Polynomial(quot), Polynomial(rem[:dd])

    def __mod__(self, divisor: Polynomial) -> Polynomial:
        return self.divmod(divisor)[1]

    def __floordiv__(self, divisor: Polynomial) -> Polynomial:
        return self.divmod(divisor)[0]

    def monic(self) -> Polynomial:
        if self.is_zero:
            return self
        return self.scale(1 / self.leading)

    def primitive(self) -> Polynomial:
        """Integer coefficients with gcd 1; sign kept."""
        if self.is_zero:
            return self
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(gcd, (abs(v) for v in ints), 0)
        return Polynomial(Fraction(v, g) for v in ints)

    def __repr__(self) -> str:
        if self.is_zero:
            return "Polynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = str(c)
            terms.append(cs if i == 0 else f"{cs}*u" if i == 1 else f"{cs}*u^{i}")
        return "Polynomial(" + " + ".join(terms) + ")"


def _coerce(value: Polynomial | RationalLike) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    return Polynomial.constant(value)


def polynomial_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm over Q."""
    a, b = p, q
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: Polynomial) -> Polynomial:
    """p / gcd(p, p'): same distinct roots, all simple."""
    if p.is_zero:
        raise ZeroPolynomial("the zero polynomial has no squarefree part")
    if p.degree < 1:
        return p.monic()
    g = polynomial_gcd(p, p.derivative())
    return (p // g).monic()


def proportional(p: Polynomial, q: Polynomial) -> bool:
    """True when p = c*q for some nonzero rational c."""
    if p.is_zero or q.is_zero:
        return p.is_zero and q.is_zero
    if p.degree != q.degree:
        return False
    ratio = p.leading / q.leading
    return p == q.scale(ratio)


# ---------------------------------------------------------------------------
# Operation dispatch (add, multiply, scale, derivative, evaluate, compose)
# ---------------------------------------------------------------------------

def polynomial_arithmetic(
    p: Polynomial,
    q: Polynomial | None = None,
    op: str = "add",
    *,
    scalar: RationalLike | None = None,
    affine: tuple[RationalLike, RationalLike] | None = None,
) -> Polynomial | Fraction:
    """Single entry point for the exact polynomial operations.

    op: "add" | "multiply" | "scale" | "derivative" | "evaluate" | "compose-affine"
    """
    if op == "add":
        return p + _require(q, op)
    if op == "multiply":
        return p * _require(q, op)
    if op == "scale":
        return p.scale(_require(scalar, op))
    if op == "derivative":
        return p.derivative()
    if op == "evaluate":
        return p.evaluate(_require(scalar, op))
    if op == "compose-affine":
        a, b = _require(affine, op)
        return p.compose_affine(a, b)
    raise InputError(f"unknown polynomial op: {op}")


def _require(value, op: str):
    if value is None:
        raise InputError(f"op {op!r} needs another operand")
    return value
