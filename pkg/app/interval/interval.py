"""
Interval Arithmetic — closed intervals with exact rational endpoints

Every operation returns an enclosure of the exact image of its inputs.
Endpoints are Fractions, so there is no rounding mode to manage; the only
rounding is `simplify`, which moves endpoints outward onto a dyadic grid
to keep denominators small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import DivisionByIntervalContainingZero, InputError, SqrtOfNegative
from ..exact.polynomial import Polynomial
from ..exact.rational import RationalLike, format_rational, parse_rational


def bits_for(width: Fraction) -> int:
    """Smallest b with 2**-b <= width / 4."""
    if width <= 0:
        raise InputError("target width must be positive")
    return max(1, math.ceil(4 / width).bit_length())


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __init__(self, lo: RationalLike, hi: RationalLike | None = None):
        lo_q = parse_rational(lo)
        hi_q = lo_q if hi is None else parse_rational(hi)
        if lo_q > hi_q:
            raise InputError(f"empty interval [{lo_q}, {hi_q}]")
        object.__setattr__(self, "lo", lo_q)
        object.__setattr__(self, "hi", hi_q)

    # -----------------------------------------------------------------------
    # Constructors / serialization
    # -----------------------------------------------------------------------

    @classmethod
    def point(cls, x: RationalLike) -> Interval:
        return cls(x, x)

    @classmethod
    def hull_of(cls, values: Iterable[Fraction | Interval]) -> Interval:
        los, his = [], []
        for v in values:
            if isinstance(v, Interval):
                los.append(v.lo)
                his.append(v.hi)
            else:
                los.append(Fraction(v))
                his.append(Fraction(v))
        if not los:
            raise InputError("hull of nothing")
        return cls(min(los), max(his))

    @classmethod
    def from_json(cls, data: Sequence[str] | str) -> Interval:
        if isinstance(data, (list, tuple)):
            if len(data) != 2:
                raise InputError(f"interval must be [lo, hi], got {data!r}")
            return cls(data[0], data[1])
        return cls.point(data)

    def to_json(self) -> list[str]:
        return [format_rational(self.lo), format_rational(self.hi)]

    # -----------------------------------------------------------------------
    # Shape
    # -----------------------------------------------------------------------

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def mag(self) -> Fraction:
        """max |x| over the interval."""
        return max(abs(self.lo), abs(self.hi))

    def contains(self, x: RationalLike | Interval) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        x = parse_rational(x)
        return self.lo <= x <= self.hi

    def intersects(self, other: Interval) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def hull(self, other: Interval) -> Interval:
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def widen(self, r: RationalLike) -> Interval:
        r = parse_rational(r)
        return Interval(self.lo - r, self.hi + r)

    def simplify(self, bits: int) -> Interval:
        """Round lo down and hi up to the grid 2**-bits when denominators exceed it."""
        scale = 1 << bits
        lo, hi = self.lo, self.hi
        if lo.denominator.bit_length() > bits:
            lo = Fraction(math.floor(lo * scale), scale)
        if hi.denominator.bit_length() > bits:
            hi = Fraction(math.ceil(hi * scale), scale)
        return Interval(lo, hi)

    # -----------------------------------------------------------------------
    # Arithmetic
    # -----------------------------------------------------------------------

    def __add__(self, other: Interval | RationalLike) -> Interval:
        other = _coerce(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: Interval | RationalLike) -> Interval:
        other = _coerce(other)
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other: RationalLike) -> Interval:
        return _coerce(other) - self

    def __mul__(self, other: Interval | RationalLike) -> Interval:
        other = _coerce(other)
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> Interval:
        if self.lo <= 0 <= self.hi:
            raise DivisionByIntervalContainingZero(f"1/{self} is unbounded")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other: Interval | RationalLike) -> Interval:
        return self * _coerce(other).reciprocal()

    def __rtruediv__(self, other: RationalLike) -> Interval:
        return _coerce(other) * self.reciprocal()

    def __pow__(self, k: int) -> Interval:
        if k < 0:
            return (self ** (-k)).reciprocal()
        if k == 0:
            return Interval.point(1)
        lo_k, hi_k = self.lo ** k, self.hi ** k
        if k % 2 == 1 or self.lo >= 0:
            return Interval(lo_k, hi_k)
        if self.hi <= 0:
            return Interval(hi_k, lo_k)
        return Interval(0, max(lo_k, hi_k))

    def sqrt(self, bits: int = 64) -> Interval:
        if self.lo < 0:
            raise SqrtOfNegative(f"sqrt of {self}")
        return Interval(sqrt_floor(self.lo, bits), sqrt_ceil(self.hi, bits))

    def root(self, k: int, bits: int = 64) -> Interval:
        """k-th root of a nonnegative interval."""
        if k == 2:
            return self.sqrt(bits)
        if k < 1:
            raise InputError(f"root order must be positive, got {k}")
        if self.lo < 0:
            raise SqrtOfNegative(f"root of {self}")
        return Interval(root_floor(self.lo, k, bits), root_ceil(self.hi, k, bits))

    def minimum(self, other: Interval) -> Interval:
        return Interval(min(self.lo, other.lo), min(self.hi, other.hi))

    def maximum(self, other: Interval) -> Interval:
        return Interval(max(self.lo, other.lo), max(self.hi, other.hi))

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def _coerce(value: Interval | RationalLike) -> Interval:
    if isinstance(value, Interval):
        return value
    return Interval.point(value)


# ---------------------------------------------------------------------------
# Square roots on the dyadic grid
# ---------------------------------------------------------------------------

def sqrt_floor(q: Fraction, bits: int) -> Fraction:
    """Largest multiple of 2**-bits that is <= sqrt(q); exact for dyadic squares."""
    if q < 0:
        raise SqrtOfNegative(f"sqrt of {q}")
    scaled = math.floor(q * (1 << (2 * bits)))
    return Fraction(math.isqrt(scaled), 1 << bits)


def sqrt_ceil(q: Fraction, bits: int) -> Fraction:
    if q < 0:
        raise SqrtOfNegative(f"sqrt of {q}")
    scaled = math.ceil(q * (1 << (2 * bits)))
    s = math.isqrt(scaled)
    if s * s < scaled:
        s += 1
    return Fraction(s, 1 << bits)


def _iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def root_floor(q: Fraction, k: int, bits: int) -> Fraction:
    scaled = math.floor(q * (1 << (k * bits)))
    return Fraction(_iroot(scaled, k), 1 << bits)


def root_ceil(q: Fraction, k: int, bits: int) -> Fraction:
    scaled = math.ceil(q * (1 << (k * bits)))
    s = _iroot(scaled, k)
    if s**k < scaled:
        s += 1
    return Fraction(s, 1 << bits)


def enclose_sqrt_rational(q: RationalLike, bits: int = 64) -> Interval:
    """Enclosure of sqrt(q) with width <= 2**-bits (exact when q is a square)."""
    q = parse_rational(q)
    num, den = q.numerator, q.denominator
    if num >= 0:
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn == num and rd * rd == den:
            return Interval.point(Fraction(rn, rd))
    return Interval.point(q).sqrt(bits)


# ---------------------------------------------------------------------------
# Polynomials over intervals
# ---------------------------------------------------------------------------

def eval_polynomial(p: Polynomial, x: Interval) -> Interval:
    """Enclosure of p over x.

    On x >= 0 the positive and negative coefficient parts are each
    increasing, which gives a much tighter enclosure than Horner.
    """
    if p.is_zero:
        return Interval.point(0)
    if x.lo >= 0:
        pos = Polynomial(max(c, 0) for c in p.coeffs)
        neg = Polynomial(max(-c, 0) for c in p.coeffs)
        return Interval(pos.evaluate(x.lo) - neg.evaluate(x.hi), pos.evaluate(x.hi) - neg.evaluate(x.lo))
    acc = Interval.point(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# Operation dispatch
# ---------------------------------------------------------------------------

def interval_arithmetic(
    a: Interval,
    b: Interval | None = None,
    op: str = "add",
    *,
    exponent: int | None = None,
    bits: int = 64,
) -> Interval:
    """op: add | sub | mul | div | sqrt | pow | min | max"""
    if op == "sqrt":
        return a.sqrt(bits)
    if op == "pow":
        if exponent is None:
            raise InputError("pow needs an integer exponent")
        return a ** exponent
    if b is None:
        raise InputError(f"op {op!r} needs two intervals")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "min":
        return a.minimum(b)
    if op == "max":
        return a.maximum(b)
    raise InputError(f"unknown interval op: {op}")
