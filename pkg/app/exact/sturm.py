"""
Certified Sign Analysis — Sturm sequences over Q

Exact real-root counting, root isolation and sign-on-region certificates
for rational polynomials. No floats anywhere: every verdict replays exactly.

Root-counting convention: a closed region [a, b] is counted as (a, b] by
Sturm's theorem, a ray [a, inf) as (a, inf); the left endpoint a is always
checked separately by direct evaluation.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..errors import ClaimFalse, InputError, ZeroPolynomial
from .polynomial import Polynomial, squarefree_part
from .rational import RationalLike, format_rational, parse_rational

log = logging.getLogger(__name__)

CLAIMS = (">=0", ">0", "<=0", "<0")


# ---------------------------------------------------------------------------
# Regions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Region:
    """A point, a closed interval [lo, hi], or a ray [lo, inf)."""

    kind: str
    lo: Fraction
    hi: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.kind not in ("point", "closed", "ray"):
            raise InputError(f"unknown region kind: {self.kind}")
        if self.kind == "closed" and (self.hi is None or self.hi < self.lo):
            raise InputError(f"closed region needs lo <= hi, got [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, a: RationalLike) -> Region:
        return cls("point", parse_rational(a))

    @classmethod
    def closed(cls, a: RationalLike, b: RationalLike) -> Region:
        a, b = parse_rational(a), parse_rational(b)
        if a == b:
            return cls("point", a)
        return cls("closed", a, b)

    @classmethod
    def ray(cls, a: RationalLike) -> Region:
        return cls("ray", parse_rational(a))

    def contains(self, x: Fraction) -> bool:
        if self.kind == "point":
            return x == self.lo
        if self.kind == "closed":
            return self.lo <= x <= self.hi
        return x >= self.lo

    def to_json(self) -> dict:
        out = {"kind": self.kind, "lo": format_rational(self.lo)}
        if self.hi is not None:
            out["hi"] = format_rational(self.hi)
        return out

    def __str__(self) -> str:
        if self.kind == "point":
            return f"{{{self.lo}}}"
        if self.kind == "closed":
            return f"[{self.lo}, {self.hi}]"
        return f"[{self.lo}, inf)"


# ---------------------------------------------------------------------------
# Sturm sequences
# ---------------------------------------------------------------------------

def sturm_sequence(p: Polynomial) -> list[Polynomial]:
    """p, p', then negated remainders until the last nonzero one."""
    if p.is_zero:
        raise ZeroPolynomial("Sturm sequence of the zero polynomial")
    seq = [p]
    if p.degree == 0:
        return seq
    seq.append(p.derivative())
    while True:
        r = -(seq[-2] % seq[-1])
        if r.is_zero:
            return seq
        seq.append(r)


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: list[int]) -> int:
    nonzero = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)


def _variations_at(seq: list[Polynomial], x: Fraction) -> int:
    return _variations([_sign(q.evaluate(x)) for q in seq])


def _variations_at_infinity(seq: list[Polynomial]) -> int:
    return _variations([_sign(q.leading) for q in seq])


def cauchy_bound(p: Polynomial) -> Fraction:
    """Every real root of p lies strictly inside (-B, B)."""
    lead = abs(p.leading)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def _count(seq: list[Polynomial], a: Fraction, b: Optional[Fraction]) -> int:
    """Distinct roots in (a, b], or (a, inf) when b is None."""
    va = _variations_at(seq, a)
    vb = _variations_at_infinity(seq) if b is None else _variations_at(seq, b)
    return va - vb


def sturm_root_count(p: Polynomial, region: Region) -> int:
    """Number of distinct real roots of p in the half-open region (a, b] / (a, inf).

    A point region {a} counts 1 if p(a) = 0.
    """
    if p.is_zero:
        raise ZeroPolynomial("cannot count roots of the zero polynomial")
    if region.kind == "point":
        return int(p.evaluate(region.lo) == 0)
    seq = sturm_sequence(squarefree_part(p))
    return _count(seq, region.lo, region.hi)


def closed_root_count(p: Polynomial, region: Region) -> int:
    """Distinct roots in the closed region, endpoint a included."""
    at_lo = int(p.evaluate(region.lo) == 0)
    if region.kind == "point":
        return at_lo
    return at_lo + sturm_root_count(p, region)


# ---------------------------------------------------------------------------
# Root isolation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootBracket:
    """Either an exact rational root (lo == hi) or an open interval (lo, hi)
    with non-root endpoints containing exactly one root."""

    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def to_json(self) -> list[str]:
        return [format_rational(self.lo), format_rational(self.hi)]


def _single_root(
    q: Polynomial,
    seq: list[Polynomial],
    lo: Fraction,
    hi: Fraction,
    max_width: Optional[Fraction],
) -> RootBracket:
    """Bracket the one root of squarefree q in (lo, hi].

    Rational roots of q are multiples of 1/L, L the leading coefficient of
    its primitive form, so once the bracket is narrower than 1/L a single
    candidate decides whether the root is rational.
    """
    if q.evaluate(hi) == 0:
        return RootBracket(hi, hi)
    spacing = Fraction(1, abs(q.primitive().leading.numerator))
    while q.evaluate(lo) == 0 or hi - lo >= spacing or (max_width is not None and hi - lo > max_width):
        mid = (lo + hi) / 2
        if q.evaluate(mid) == 0:
            return RootBracket(mid, mid)
        if _count(seq, lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    candidate = Fraction(math.floor(lo / spacing) + 1) * spacing
    if candidate < hi and q.evaluate(candidate) == 0:
        return RootBracket(candidate, candidate)
    return RootBracket(lo, hi)


def isolate_real_roots(
    p: Polynomial,
    region: Region,
    max_width: Optional[Fraction] = None,
) -> list[RootBracket]:
    """Isolate every distinct root of p in the closed region, left to right.

    Rational roots always come back exact. Open brackets hold an irrational
    root and are narrowed to width <= max_width when it is given.
    """
    if p.is_zero:
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    q = squarefree_part(p)
    brackets: list[RootBracket] = []
    if q.evaluate(region.lo) == 0:
        brackets.append(RootBracket(region.lo, region.lo))
    if region.kind == "point" or q.degree < 1:
        return brackets

    seq = sturm_sequence(q)
    hi = region.hi if region.kind == "closed" else max(cauchy_bound(q), region.lo + 1)
    stack = [(region.lo, hi, _count(seq, region.lo, hi))]
    found: list[RootBracket] = []
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            found.append(_single_root(q, seq, lo, hi, max_width))
            continue
        mid = (lo + hi) / 2
        left = _count(seq, lo, mid)
        stack.append((mid, hi, n - left))
        stack.append((lo, mid, left))
    brackets.extend(sorted(found, key=lambda b: (b.lo, b.hi)))
    return brackets


def refine_bracket(p: Polynomial, bracket: RootBracket, max_width: Fraction) -> RootBracket:
    """Shrink an open root bracket of p by Sturm bisection to width <= max_width."""
    if bracket.exact:
        return bracket
    q = squarefree_part(p)
    seq = sturm_sequence(q)
    lo, hi = bracket.lo, bracket.hi
    while hi - lo > max_width:
        mid = (lo + hi) / 2
        if q.evaluate(mid) == 0:
            return RootBracket(mid, mid)
        if _count(seq, lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    return RootBracket(lo, hi)


# ---------------------------------------------------------------------------
# Sign certificates
# ---------------------------------------------------------------------------

def _satisfies(value: Fraction, claim: str) -> bool:
    if claim == ">=0":
        return value >= 0
    if claim == ">0":
        return value > 0
    if claim == "<=0":
        return value <= 0
    return value < 0


@dataclass(frozen=True)
class SignCertificate:
    """Evidence that p satisfies `claim` on `region`.

    `samples` are sorted rational points with their exact values. Between
    two consecutive samples the closed interval holds at most one distinct
    root, so the sign of p on the region is determined by the samples.
    """

    polynomial: Polynomial
    region: Region
    claim: str
    root_count: int
    samples: tuple[tuple[Fraction, Fraction], ...] = field(default_factory=tuple)

    def recheck(self) -> bool:
        """Replay the evidence from scratch."""
        try:
            _check_evidence(self.polynomial, self.region, self.claim, self.root_count, self.samples)
        except ClaimFalse:
            return False
        return True

    def to_json(self) -> dict:
        return {
            "polynomial": self.polynomial.to_json(),
            "region": self.region.to_json(),
            "claim": self.claim,
            "root_count": self.root_count,
            "samples": [[format_rational(x), format_rational(v)] for x, v in self.samples],
        }


def _check_evidence(
    p: Polynomial,
    region: Region,
    claim: str,
    root_count: int,
    samples: tuple[tuple[Fraction, Fraction], ...],
) -> None:
    if closed_root_count(p, region) != root_count:
        raise ClaimFalse("stored root count does not match a fresh Sturm count")
    if claim in (">0", "<0") and root_count:
        raise ClaimFalse(f"p vanishes in {region} but the claim {claim} is strict")
    if not samples or samples[0][0] != region.lo:
        raise ClaimFalse("samples must start at the left end of the region")
    for x, v in samples:
        if not region.contains(x) or p.evaluate(x) != v:
            raise ClaimFalse(f"sample at {x} is outside the region or misevaluated", witness=x)
        if not _satisfies(v, claim):
            raise ClaimFalse(f"p({x}) = {v} violates {claim}", witness=x)
    for (x0, _), (x1, _) in zip(samples, samples[1:]):
        if x1 <= x0 or closed_root_count(p, Region.closed(x0, x1)) > 1:
            raise ClaimFalse(f"samples {x0}, {x1} do not separate the roots")
    last = samples[-1][0]
    if region.kind == "closed" and last != region.hi:
        raise ClaimFalse("samples must end at the right end of the region")
    if region.kind == "ray" and closed_root_count(p, Region.ray(last)) != 0:
        raise ClaimFalse("the last sample of a ray must lie beyond every root")


def _sample_points(p: Polynomial, region: Region, brackets: list[RootBracket]) -> list[Fraction]:
    """One point per root-free gap, the region endpoints, and every exact root."""
    if region.kind == "point":
        return [region.lo]
    points = [region.lo]
    for left, right in zip(brackets, brackets[1:]):
        points.append((left.hi + right.lo) / 2)
    points.extend(b.lo for b in brackets if b.exact)
    if brackets:
        first = brackets[0]
        if first.lo > region.lo:
            points.append((region.lo + first.lo) / 2)
    if region.kind == "closed":
        if brackets and brackets[-1].hi < region.hi:
            points.append((brackets[-1].hi + region.hi) / 2)
        points.append(region.hi)
    else:
        tail = brackets[-1].hi if brackets else region.lo
        points.append(tail + 1)
    return sorted(set(points))


def certify_sign_on_region(p: Polynomial, region: Region, claim: str) -> SignCertificate:
    """Certify `p claim` on the whole region, or raise ClaimFalse with a witness."""
    if claim not in CLAIMS:
        raise InputError(f"unknown sign claim: {claim!r}")
    if p.is_zero:
        raise ZeroPolynomial("sign claims about the zero polynomial are not certified")

    brackets = isolate_real_roots(p, region)
    points = _sample_points(p, region, brackets)
    samples = tuple((x, p.evaluate(x)) for x in points)

    for x, v in samples:
        if not _satisfies(v, claim):
            log.debug("sign claim %s on %s fails at %s", claim, region, x)
            raise ClaimFalse(f"p({x}) = {v} violates {claim} on {region}", witness=x)
    if claim in (">0", "<0") and brackets:
        # Every rational sample is fine, so the root is irrational of even multiplicity.
        b = brackets[0]
        if b.exact:
            raise ClaimFalse(f"p({b.lo}) = 0 violates {claim}", witness=b.lo)
        raise ClaimFalse(
            f"p has a root in ({b.lo}, {b.hi}) which violates {claim}",
            witness_interval=(b.lo, b.hi),
        )

    cert = SignCertificate(p, region, claim, len(brackets), samples)
    _check_evidence(p, region, claim, cert.root_count, samples)
    return cert
