"""
Elementary Functions — certified enclosures of pi, exp and cos

Pure math. Each enclosure comes from a convergent series with an explicit
remainder bound:

- pi: Machin's formula 16*atan(1/5) - 4*atan(1/239); both series alternate
  with decreasing terms, so consecutive partial sums bracket the value.
- exp: e^q = e^n * e^r with n = floor(q), 0 <= r < 1; Taylor remainder
  of e^r after the term r^N/N! is at most 2 * r^(N+1)/(N+1)!.
- cos: reduction by a multiple of 2*pi, Taylor with Lagrange remainder
  |t|^(2N+2)/(2N+2)!, and the extrema at multiples of pi added explicitly.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from functools import lru_cache

from ..errors import InputError, PrecisionUnreachable
from ..exact.rational import RationalLike, parse_rational
from .interval import Interval, bits_for

log = logging.getLogger(__name__)

MAX_TERMS = 10_000
MAX_ARGUMENT = Fraction(10**6)


def _relative_bits(target_width: Fraction, magnitude: Fraction) -> int:
    return bits_for(target_width * max(Fraction(1), magnitude))


# ---------------------------------------------------------------------------
# pi
# ---------------------------------------------------------------------------

def _atan_inverse(m: int, tol: Fraction) -> tuple[Fraction, Fraction]:
    """Bracket for atan(1/m), width <= tol."""
    total = Fraction(0)
    power = Fraction(1, m)
    m2 = m * m
    for k in range(MAX_TERMS):
        term = power / (2 * k + 1)
        nxt = total + term if k % 2 == 0 else total - term
        next_term = power / m2 / (2 * k + 3)
        if next_term <= tol:
            # partial sums alternate around the limit
            after = nxt - next_term if k % 2 == 0 else nxt + next_term
            return min(nxt, after), max(nxt, after)
        total = nxt
        power /= m2
    raise PrecisionUnreachable(f"atan(1/{m}) did not reach width {tol}")


@lru_cache(maxsize=64)
def _pi_cached(target_width: Fraction) -> Interval:
    tol = target_width / 40
    lo5, hi5 = _atan_inverse(5, tol)
    lo239, hi239 = _atan_inverse(239, tol)
    raw = Interval(16 * lo5 - 4 * hi239, 16 * hi5 - 4 * lo239)
    return raw.simplify(bits_for(target_width))


def enclose_pi(target_width: RationalLike = Fraction(1, 10**12)) -> Interval:
    """Interval of width <= target_width containing pi."""
    target_width = parse_rational(target_width)
    if target_width <= 0:
        raise InputError("target width must be positive")
    return _pi_cached(target_width)


# ---------------------------------------------------------------------------
# exp
# ---------------------------------------------------------------------------

def _exp_fraction_part(r: Fraction, rel_tol: Fraction) -> tuple[Fraction, Fraction]:
    """Bracket for e^r with 0 <= r < 1 and relative width <= rel_tol."""
    total = Fraction(0)
    term = Fraction(1)
    for k in range(1, MAX_TERMS):
        total += term
        term = term * r / k
        # remainder after the previous term is <= 2 * term since r < 1
        if 2 * term <= rel_tol:
            return total, total + 2 * term
    raise PrecisionUnreachable(f"exp({r}) did not converge")


@lru_cache(maxsize=64)
def _e_cached(rel_tol: Fraction) -> tuple[Fraction, Fraction]:
    total = Fraction(0)
    term = Fraction(1)
    for k in range(1, MAX_TERMS):
        total += term
        term /= k
        if 2 * term <= rel_tol:
            e = Interval(total, total + 2 * term).simplify(bits_for(rel_tol) + 8)
            return e.lo, e.hi
    raise PrecisionUnreachable("e did not converge")


def _exp_point(q: Fraction, rel_tol: Fraction) -> tuple[Fraction, Fraction]:
    """Bracket for e^q with relative width about rel_tol."""
    if q < 0:
        lo, hi = _exp_point(-q, rel_tol)
        return 1 / hi, 1 / lo
    n = math.floor(q)
    r = q - n
    piece_tol = rel_tol / (4 * (n + 2))
    lo_r, hi_r = _exp_fraction_part(r, piece_tol)
    if n == 0:
        return lo_r, hi_r
    lo_e, hi_e = _e_cached(piece_tol)
    return lo_e**n * lo_r, hi_e**n * hi_r


def enclose_exp(x: Interval, target_width: RationalLike = Fraction(1, 10**12)) -> Interval:
    """exp is increasing: the enclosure is [exp(x.lo) lower, exp(x.hi) upper]."""
    target_width = parse_rational(target_width)
    if x.mag > MAX_ARGUMENT:
        raise PrecisionUnreachable(f"exp argument {x} outside the supported range")
    if x.is_point and x.lo == 0:
        return Interval.point(1)
    rel = target_width / 4
    lo, _ = _exp_point(x.lo, rel)
    _, hi = _exp_point(x.hi, rel)
    return Interval(lo, hi).simplify(_relative_bits(target_width, hi))


def enclose_exp_relative(q: RationalLike, rel_tol: RationalLike = Fraction(1, 10**12)) -> Interval:
    """e^q with width <= rel_tol * e^q; tails far below 1 keep their digits."""
    q, rel_tol = parse_rational(q), parse_rational(rel_tol)
    if rel_tol <= 0:
        raise InputError("relative tolerance must be positive")
    if abs(q) > MAX_ARGUMENT:
        raise PrecisionUnreachable(f"exp argument {q} outside the supported range")
    lo, hi = _exp_point(q, rel_tol / 4)
    return Interval(lo, hi)


# ---------------------------------------------------------------------------
# cos
# ---------------------------------------------------------------------------

def _cos_point(t: Fraction, tol: Fraction) -> Interval:
    """cos(t) by Taylor with Lagrange remainder <= tol."""
    total = Fraction(0)
    term = Fraction(1)
    t2 = t * t
    for j in range(MAX_TERMS):
        total += term
        term = -term * t2 / ((2 * j + 1) * (2 * j + 2))
        if abs(term) <= tol:
            return Interval(total - abs(term), total + abs(term))
    raise PrecisionUnreachable(f"cos({t}) did not converge")


def enclose_cos(x: Interval, target_width: RationalLike = Fraction(1, 10**12)) -> Interval:
    target_width = parse_rational(target_width)
    if x.mag > MAX_ARGUMENT:
        raise PrecisionUnreachable(f"cos argument {x} outside the supported range")
    pi = enclose_pi(target_width / (8 * (1 + x.mag)))
    two_pi = pi * 2
    if x.width >= two_pi.lo:
        return Interval(-1, 1)

    k = math.floor(x.mid / two_pi.mid)
    y = x - two_pi * k
    tol = target_width / 8
    bits = bits_for(target_width)
    y = y.simplify(bits + 8)
    parts = [_cos_point(y.lo, tol), _cos_point(y.hi, tol)]

    # extrema of cos at m*pi that may lie inside y
    m_lo = math.floor(y.lo / pi.hi) - 1
    m_hi = math.ceil(y.hi / pi.lo) + 1
    for m in range(m_lo, m_hi + 1):
        crit = pi * m
        if crit.intersects(y):
            parts.append(Interval.point(1 if m % 2 == 0 else -1))

    out = Interval.hull_of(parts)
    out = Interval(max(out.lo, Fraction(-1)), min(out.hi, Fraction(1)))
    return out.simplify(bits)


def enclose_elementary(
    x: Interval,
    fn: str,
    target_width: RationalLike = Fraction(1, 10**12),
) -> Interval:
    """fn: "exp" | "cos"."""
    if fn == "exp":
        return enclose_exp(x, target_width)
    if fn == "cos":
        return enclose_cos(x, target_width)
    raise InputError(f"unsupported elementary function: {fn}")


# ---------------------------------------------------------------------------
# Ball volumes
# ---------------------------------------------------------------------------

def ball_volume_factor(n: int) -> tuple[Fraction, int]:
    """vol(B_1^n) = c * pi**k; returns (c, k) exactly."""
    if n < 1:
        raise InputError(f"dimension must be positive, got {n}")
    if n % 2 == 0:
        return Fraction(1, math.factorial(n // 2)), n // 2
    double_fact = math.prod(range(n, 0, -2))
    return Fraction(2 ** ((n + 1) // 2), double_fact), (n - 1) // 2


def enclose_ball_volume(
    n: int,
    radius: Interval,
    target_width: RationalLike = Fraction(1, 10**12),
) -> Interval:
    """Enclosure of vol(B_r) in R^n for r in `radius`."""
    target_width = parse_rational(target_width)
    if radius.lo < 0:
        raise InputError(f"negative radius {radius}")
    c, k = ball_volume_factor(n)
    pi = enclose_pi(target_width / (16 * (1 + k) * 4**n))
    return (pi**k * radius**n * c).simplify(bits_for(target_width))
