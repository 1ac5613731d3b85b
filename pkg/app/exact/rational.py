"""
Exact rationals — parsing and the "num/den" wire format.

Terminating decimals such as "1.084" are exact rational numbers here,
never float approximations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from ..errors import InputError

RationalLike = Union[Fraction, int, str]


def parse_rational(value: RationalLike) -> Fraction:
    """Parse "a/b", an integer, or a terminating decimal into a Fraction.

    Floats are rejected: a float literal already carries rounding error.
    """
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise InputError("empty rational literal")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not a rational: {value!r}")


def format_rational(q: Fraction | int) -> str:
    """Always "num/den", e.g. -216 -> "-216/1"."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def decimal_string(q: Fraction, places: int = 12) -> str:
    """Human-readable decimal rounded toward zero, for transcripts only."""
    sign = "-" if q < 0 else ""
    q = abs(q)
    scaled = q.numerator * 10**places // q.denominator
    whole, frac = divmod(scaled, 10**places)
    if places == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{places}d}"


def label_rational(q: Fraction | int) -> str:
    """Exact short form for labels: "1.084" for terminating decimals, "12/47" otherwise."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    for places in range(1, 19):
        if (q * 10**places).denominator == 1:
            return decimal_string(q, places)
    return format_rational(q)
