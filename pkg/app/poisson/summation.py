"""
Poisson Summation Check — truncated lattice sums with rigorous tails

Validates, for a concrete lattice and a radial certificate,

    sum_{x in L} f(x + z) = (1 / covol(L)) * sum_{t in L*} f_hat(t) cos(2*pi*<t, z>)

by summing both sides over |x| <= R and bounding everything beyond R.

Tail bound. A lattice point in the shell kR <= |x| < (k+1)R carries a ball
of radius mu (the packing radius) inside the ball of radius (k+1)R + mu, so
the shell holds at most ((k+1)R + mu)^n / mu^n points. Beyond the last root
of p and of p' - p/2, |p(u)| e^(-u/2) is decreasing, which bounds |f| on the
first shell by its value at u = 2*pi*k^2*R^2. Later shells are majorized by
P(u) = sum |c_i| u^i. P(u) e^(-u/2) is certified non-increasing from the
second shell on by a Sturm sign check of P' - P/2, and consecutive shell
terms shrink by at most

    rho = ((3R + mu) / (2R + mu))^n * 4^d * e^(-3*pi*R^2),

so their total is at most (second-shell term) / (1 - rho).
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..config import settings
from ..errors import ClaimFalse, PreconditionFailed, TailBoundDiverges
from ..exact.polynomial import Polynomial
from ..exact.rational import RationalLike, format_rational, parse_rational
from ..exact.sturm import Region, certify_sign_on_region, isolate_real_roots
from ..fourier.certificate import RadialCertificate, enclose_profile
from ..interval.elementary import enclose_cos, enclose_exp_relative, enclose_pi
from ..interval.interval import Interval, sqrt_floor
from ..lattice.enumerate import enumerate_vectors_below, minimal_norm
from ..lattice.gram import GramMatrix, LatticeBasis, as_gram, dual_gram, working_bits
from ..proof.trace_logger import log_poisson_check

log = logging.getLogger(__name__)

CONSISTENT = "consistent"
VIOLATED = "violated"
INCONCLUSIVE = "inconclusive"


# ---------------------------------------------------------------------------
# Truncated sums
# ---------------------------------------------------------------------------

def _profile_at_norm(p: Polynomial, norm: Interval, width: Fraction) -> Interval:
    """p(2*pi*|x|^2) e^(-pi*|x|^2) for |x|^2 in `norm`."""
    if norm.hi == 0:
        return Interval.point(p.coefficient(0))
    pi = enclose_pi(width / (8 * (1 + norm.hi)))
    return enclose_profile(p, pi * 2 * norm, width)


def _shift_norm_bound(gram: GramMatrix, shift: Sequence[Fraction], r2: Fraction) -> Fraction:
    if not any(shift):
        return r2
    return 2 * r2 + 2 * gram.norm(shift).hi


def lattice_side(
    gram: GramMatrix,
    p: Polynomial,
    radius: Fraction,
    shift: Optional[Sequence[Fraction]] = None,
    width: Optional[Fraction] = None,
) -> tuple[Interval, int]:
    """sum of p-profile over x + shift with |x + shift| <= radius; (enclosure, terms)."""
    width = settings.precision if width is None else width
    n = gram.dimension
    z = tuple(shift) if shift is not None else (Fraction(0),) * n
    r2 = radius * radius
    total = Interval.point(0)
    terms = 0
    candidates = [(0,) * n]
    candidates += [v.coords for v in enumerate_vectors_below(gram, _shift_norm_bound(gram, z, r2)).vectors]
    for x in candidates:
        pt = tuple(Fraction(a) + b for a, b in zip(x, z))
        norm = gram.norm(pt)
        if norm.lo > r2:
            continue
        total = total + _profile_at_norm(p, norm, width)
        terms += 1
    return total, terms


def dual_side(
    dual: GramMatrix,
    p_hat: Polynomial,
    radius: Fraction,
    shift: Optional[Sequence[Fraction]] = None,
    width: Optional[Fraction] = None,
) -> tuple[Interval, int]:
    """sum of p_hat-profile(t) cos(2*pi*k.z) over dual points t = k with |t| <= radius."""
    width = settings.precision if width is None else width
    n = dual.dimension
    z = tuple(shift) if shift is not None else (Fraction(0),) * n
    shifted = any(z)
    r2 = radius * radius
    total = Interval.point(p_hat.coefficient(0))
    terms = 1
    pi = enclose_pi(width / 64)
    for v in enumerate_vectors_below(dual, r2).vectors:
        value = _profile_at_norm(p_hat, v.norm, width)
        if shifted:
            phase = sum((k * zi for k, zi in zip(v.coords, z)), Fraction(0))
            value = value * enclose_cos(pi * 2 * phase, width)
        total = total + value
        terms += 1
    return total, terms


def truncated_poisson_sides(
    lattice: GramMatrix | LatticeBasis,
    cert: RadialCertificate,
    radius: RationalLike,
    transform: Optional[Polynomial] = None,
    shift: Optional[Sequence[RationalLike]] = None,
) -> tuple[Interval, Interval]:
    """(sum over |x| <= R of f(x + z), sum over |t| <= R of f_hat(t) cos(2*pi*<t, z>))."""
    radius = parse_rational(radius)
    if radius <= 0:
        raise PreconditionFailed(f"truncation radius must be positive, got {radius}")
    gram = as_gram(lattice)
    _check_dimension_match(gram, cert)
    z = _parse_shift(shift, gram.dimension)
    lhs, _ = lattice_side(gram, cert.p, radius, z)
    rhs, _ = dual_side(dual_gram(gram), cert.p_hat if transform is None else transform, radius, z)
    return lhs, rhs


def _check_dimension_match(gram: GramMatrix, cert: RadialCertificate) -> None:
    if gram.dimension != cert.dimension:
        raise PreconditionFailed(f"lattice dimension {gram.dimension} != certificate dimension {cert.dimension}")


def _parse_shift(shift: Optional[Sequence[RationalLike]], n: int) -> Optional[tuple[Fraction, ...]]:
    if shift is None:
        return None
    z = tuple(parse_rational(s) for s in shift)
    if len(z) != n:
        raise PreconditionFailed(f"shift has {len(z)} coordinates, lattice dimension is {n}")
    return z


# ---------------------------------------------------------------------------
# Tail bounds
# ---------------------------------------------------------------------------

def envelope_start(p: Polynomial) -> Fraction:
    """Rational u_c beyond which |p(u)| e^(-u/2) is decreasing."""
    q = p.derivative() - p.scale(Fraction(1, 2))
    ends = [Fraction(0)]
    for poly in (p, q):
        if poly.degree >= 1:
            brackets = isolate_real_roots(poly, Region.ray(0))
            if brackets:
                ends.append(brackets[-1].hi)
    return max(ends)


def _exp_upper(x: Fraction) -> Fraction:
    return enclose_exp_relative(x, Fraction(1, 10**6)).hi


def majorant_decreasing(majorant: Polynomial, u: Fraction) -> bool:
    """Certify that P(v) e^(-v/2) is non-increasing for v >= u, P >= 0 there."""
    if majorant.is_zero:
        return True
    slope = majorant.derivative() - majorant.scale(Fraction(1, 2))
    try:
        certify_sign_on_region(slope, Region.ray(u), "<=0")
    except ClaimFalse:
        return False
    return True


def tail_bound(gram: GramMatrix, p: Polynomial, radius: Fraction) -> Fraction:
    """Rational upper bound on sum_{|x| >= R} |p(2*pi*|x|^2)| e^(-pi*|x|^2)."""
    n = gram.dimension
    d = max(p.degree, 0)
    m = minimal_norm(gram)
    mu = sqrt_floor(m.lo, working_bits()) / 2
    if mu <= 0:
        raise TailBoundDiverges("packing radius is not bounded away from zero")
    pi_lo = enclose_pi(Fraction(1, 10**15)).lo
    r2 = radius * radius

    u1 = 2 * pi_lo * r2
    if u1 < envelope_start(p):
        raise TailBoundDiverges(
            f"radius {radius} lies inside the region where |p| e^(-u/2) may still grow"
        )

    def count(k: int) -> Fraction:
        return ((k + 1) * radius + mu) ** n / mu**n

    first = count(1) * abs(p.evaluate(u1)) * _exp_upper(-u1 / 2)

    majorant = Polynomial(abs(c) for c in p.coeffs)
    u2 = 4 * u1
    if not majorant_decreasing(majorant, u2):
        raise TailBoundDiverges(f"coefficient majorant is not yet decreasing at R = {radius}")
    second = count(2) * majorant.evaluate(u2) * _exp_upper(-u2 / 2)
    rho = ((3 * radius + mu) / (2 * radius + mu)) ** n * 4**d * _exp_upper(-3 * pi_lo * r2)
    if rho >= 1:
        raise TailBoundDiverges(f"shell series ratio {float(rho):.3g} does not contract at R = {radius}")
    return first + second / (1 - rho)


# ---------------------------------------------------------------------------
# Identity check
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PoissonCheckReport:
    lattice_id: str
    certificate_id: str
    radius: Fraction
    lhs_truncated: Interval
    rhs_truncated: Interval
    lhs_tail_bound: Fraction
    rhs_tail_bound: Fraction
    covolume: Interval
    gap: Interval
    tolerance: Fraction
    verdict: str
    lhs_terms: int = 0
    rhs_terms: int = 0

    def to_json(self) -> dict:
        return {
            "lattice_id": self.lattice_id,
            "certificate_id": self.certificate_id,
            "radius": format_rational(self.radius),
            "lhs_truncated": self.lhs_truncated.to_json(),
            "rhs_truncated": self.rhs_truncated.to_json(),
            "lhs_tail_bound": format_rational(self.lhs_tail_bound),
            "rhs_tail_bound": format_rational(self.rhs_tail_bound),
            "covolume": self.covolume.to_json(),
            "gap": self.gap.to_json(),
            "tolerance": format_rational(self.tolerance),
            "lhs_terms": self.lhs_terms,
            "rhs_terms": self.rhs_terms,
            "verdict": self.verdict,
        }


def poisson_identity_check(
    lattice: GramMatrix | LatticeBasis,
    cert: RadialCertificate,
    radius: RationalLike,
    tolerance: RationalLike = Fraction(1, 10**6),
    transform: Optional[Polynomial] = None,
    shift: Optional[Sequence[RationalLike]] = None,
    lattice_id: str = "lattice",
    certificate_id: str = "certificate",
) -> PoissonCheckReport:
    start = time.monotonic()
    radius = parse_rational(radius)
    tolerance = parse_rational(tolerance)
    if radius <= 0 or tolerance <= 0:
        raise PreconditionFailed("radius and tolerance must be positive")
    gram = as_gram(lattice)
    _check_dimension_match(gram, cert)
    dual = dual_gram(gram)
    for name, form in (("lattice", gram), ("dual lattice", dual)):
        if radius * radius <= minimal_norm(form).hi:
            raise PreconditionFailed(f"R = {radius} does not exceed the packing diameter of the {name}")

    z = _parse_shift(shift, gram.dimension)
    p_hat = cert.p_hat if transform is None else transform
    lhs, lhs_terms = lattice_side(gram, cert.p, radius, z)
    rhs, rhs_terms = dual_side(dual, p_hat, radius, z)
    lhs_tail = tail_bound(gram, cert.p, radius)
    rhs_tail = tail_bound(dual, p_hat, radius)
    covolume = gram.covolume()

    full_lhs = lhs.widen(lhs_tail)
    full_rhs = rhs.widen(rhs_tail) / covolume
    gap = full_lhs - full_rhs
    if not full_lhs.intersects(full_rhs):
        verdict = VIOLATED
    elif gap.width <= tolerance:
        verdict = CONSISTENT
    else:
        verdict = INCONCLUSIVE

    log.info(
        "poisson check %s/%s R=%s: %s (%.1f ms)",
        lattice_id, certificate_id, radius, verdict, (time.monotonic() - start) * 1000,
    )
    log_poisson_check(
        lattice_id=lattice_id,
        certificate_id=certificate_id,
        radius=format_rational(radius),
        verdict=verdict,
        gap=gap.to_json(),
        elapsed_ms=(time.monotonic() - start) * 1000,
    )
    return PoissonCheckReport(
        lattice_id=lattice_id,
        certificate_id=certificate_id,
        radius=radius,
        lhs_truncated=lhs,
        rhs_truncated=rhs,
        lhs_tail_bound=lhs_tail,
        rhs_tail_bound=rhs_tail,
        covolume=covolume,
        gap=gap,
        tolerance=tolerance,
        verdict=verdict,
        lhs_terms=lhs_terms,
        rhs_terms=rhs_terms,
    )


def gap_width_bound(report: PoissonCheckReport) -> Fraction:
    """Upper bound on |lhs - rhs / covol| implied by the report."""
    return max(abs(report.gap.lo), abs(report.gap.hi))