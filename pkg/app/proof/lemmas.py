"""
Lemma Chain — the counting lemmas behind the planar proof

The lattice under study has covolume 1 and is at least as dense as the
hexagonal one, so its minimal length is at least (4/3)^(1/4). Four lemmas
pin down its short vectors:

  short vector   some nonzero vector is shorter than 1.084
  at most six    at most six nearly minimal vectors
  length gap     no vector length falls in [1.114, 1.62]
  at least six   more than five nearly minimal vectors

Only the numbers are machine-checked. The Poisson-summation deductions are
recorded as logic claims whose premises are the checked numbers.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..config import settings
from ..errors import PreconditionFailed
from ..exact.polynomial import Polynomial
from ..exact.rational import RationalLike, format_rational, label_rational, parse_rational
from ..fourier.certificate import RadialCertificate, enclose_profile
from ..interval.compare import FALSIFIED, INCONCLUSIVE, VERIFIED
from ..interval.elementary import enclose_cos, enclose_pi
from ..interval.interval import Interval, bits_for
from ..lattice.enumerate import CERTAIN, covolume_scale, minimal_norm, nearly_minimal_vectors
from ..lattice.gram import GramMatrix
from .constants import ARC, COS_BOUND, COUNT_QUOTIENT, GAP_END, NEAR, SHORT_WINDOW
from .report import (
    ENCLOSURE,
    Claim,
    StepRecord,
    enclosure_claim,
    exact_claim,
    logic_claim,
)
from .sign_conditions import u_window, verify_sign_conditions

log = logging.getLogger(__name__)

FOUR_THIRDS = Fraction(4, 3)


# ---------------------------------------------------------------------------
# Shared enclosures
# ---------------------------------------------------------------------------

def min_length(width: Fraction) -> Interval:
    """(4/3)^(1/4), the minimal length of the hexagonal lattice at covolume 1."""
    return Interval.point(FOUR_THIRDS).root(4, bits_for(width) + 4)


def min_norm_u(width: Fraction) -> Interval:
    """u* = 2*pi*(4/3)^(1/2)."""
    bits = bits_for(width) + 8
    return enclose_pi(width / 16) * 2 * Interval.point(FOUR_THIRDS).sqrt(bits)


def profile_at_min(p: Polynomial, width: Fraction) -> Interval:
    """p(u*) e^(-u*/2): the certificate's value at a vector of length (4/3)^(1/4)."""
    return enclose_profile(p, min_norm_u(width / 64), width)


def _cos_arc(width: Fraction) -> Interval:
    return enclose_cos(enclose_pi(width / 16) * 2 * ARC, width)


# ---------------------------------------------------------------------------
# Short vector
# ---------------------------------------------------------------------------

def lemma_short_vector(cert_f: RadialCertificate, sign_record: Optional[StepRecord] = None) -> StepRecord:
    """Some nonzero vector has length below the sign-change radius of f."""
    if cert_f.sign_change_radius is None:
        raise PreconditionFailed("short-vector lemma needs a certificate with a sign-change radius")
    if sign_record is None:
        sign_record = verify_sign_conditions(cert_f, monotone_window=(0, cert_f.sign_change_radius))
    r = cert_f.sign_change_radius
    lo, hi = SHORT_WINDOW
    record = StepRecord(
        name="lemma_short_vector",
        lemma=f"the lattice contains a nonzero vector of length at most {label_rational(r)}",
        inputs={"sign_change_radius": label_rational(r)},
    )
    premises = [sign_record.claim("(i)"), sign_record.claim("(ii)"), sign_record.claim("(iii)")]
    record.add(
        logic_claim(
            "poisson deduction",
            "If every nonzero vector had length >= r, every nonzero term of the lattice side of "
            "Poisson summation would be < 0, so the lattice side would be below f(0), while the "
            "dual side is at least f_hat(0) = f(0).",
            premises,
        )
    )
    record.add(enclosure_claim(f"{label_rational(lo)} < (4/3)^(1/4)", lo, "<", min_length))
    record.add(enclosure_claim(f"(4/3)^(1/4) < {label_rational(hi)}", min_length, "<", hi))
    record.add(exact_claim(f"{label_rational(hi)} < r", lambda: (hi, r), "<"))
    record.inputs["minimal_length_window"] = [min_length(settings.precision).to_json(), format_rational(r)]
    return record.finish()


# ---------------------------------------------------------------------------
# At most six
# ---------------------------------------------------------------------------

def cos_bound(near: Fraction, width: Fraction) -> Interval:
    """(2*near^2 - (4/3)^(1/2)) / (2*(4/3)^(1/2)), the law-of-cosines bound."""
    s = Interval.point(FOUR_THIRDS).sqrt(bits_for(width) + 8)
    return ((2 * near * near - s) / (s * 2)).simplify(bits_for(width) + 4)


def lemma_at_most_six(near: RationalLike = NEAR) -> StepRecord:
    """Nearly minimal vectors are pairwise more than 2*pi*0.152 apart, so there are at most six."""
    near = parse_rational(near)
    record = StepRecord(
        name="lemma_at_most_six",
        lemma="there are at most six nearly minimal vectors",
        inputs={"near": format_rational(near), "cos_bound": format_rational(COS_BOUND), "arc": label_rational(ARC)},
    )
    bound = record.add(
        enclosure_claim(
            f"(2*{label_rational(near)}^2 - (4/3)^(1/2)) / (2*(4/3)^(1/2)) < {label_rational(COS_BOUND)}",
            lambda w: cos_bound(near, w),
            "<",
            COS_BOUND,
        )
    )
    arc = record.add(enclosure_claim(f"cos(2*pi*{label_rational(ARC)}) > {label_rational(COS_BOUND)}", _cos_arc, ">", COS_BOUND))
    seven = record.add(exact_claim(f"7 * {label_rational(ARC)} = 1.064", lambda: (7 * ARC, Fraction("1.064")), "="))
    record.add(exact_claim("1.064 > 1", lambda: (Fraction("1.064"), Fraction(1)), ">"))
    record.add(
        logic_claim(
            "arc packing",
            "Two nearly minimal vectors at angle theta satisfy cos(theta) < 0.575 < cos(2*pi*0.152), "
            "so theta > 2*pi*0.152; seven such vectors would need 7 * 0.152 > 1 full turns.",
            [bound, arc, seven],
        )
    )
    return record.finish()


# ---------------------------------------------------------------------------
# Length gap
# ---------------------------------------------------------------------------

@dataclass
class GapScan:
    verdict: str
    pieces: int
    min_width: Fraction
    upper: Interval
    threshold: Interval
    witness: Optional[tuple[Fraction, Fraction]] = None


def scan_gap(
    p: Polynomial,
    u_lo: Fraction,
    u_hi: Fraction,
    threshold: Interval,
    pieces: int,
    max_pieces: int,
    width: Fraction,
) -> GapScan:
    """Bound p(u) e^(-u/2) above on [u_lo, u_hi] piecewise and compare with threshold.lo.

    Undecided pieces are halved until they reach (u_hi - u_lo) / max_pieces.
    """
    span = u_hi - u_lo
    floor_width = span / max_pieces
    if span == 0:
        todo = [(u_lo, u_hi)]
    else:
        step = span / pieces
        todo = [(u_lo + k * step, u_lo + (k + 1) * step) for k in range(pieces)]
    done = 0
    smallest = span / pieces if span else Fraction(0)
    worst: Optional[Interval] = None
    verdict = VERIFIED
    witness = None

    while todo:
        a, b = todo.pop()
        value = enclose_profile(p, Interval(a, b), width)
        worst = value if worst is None else worst.maximum(value)
        if value.hi < threshold.lo:
            done += 1
            continue
        if value.lo >= threshold.hi:
            return GapScan(FALSIFIED, done + 1, smallest, worst, threshold, (a, b))
        if b - a > floor_width:
            mid = (a + b) / 2
            smallest = min(smallest, mid - a)
            todo.extend([(a, mid), (mid, b)])
            continue
        mid = (a + b) / 2
        at_mid = enclose_profile(p, Interval.point(mid), width)
        if at_mid.lo >= threshold.hi:
            return GapScan(FALSIFIED, done + 1, smallest, worst, threshold, (mid, mid))
        verdict = INCONCLUSIVE
        witness = witness or (a, b)
        done += 1
    return GapScan(verdict, done, smallest, worst, threshold, witness)


def lemma_length_gap(
    cert_f: RadialCertificate,
    lo: RationalLike = NEAR,
    hi: RationalLike = GAP_END,
    pieces: Optional[int] = None,
    max_pieces: Optional[int] = None,
) -> StepRecord:
    """f(x) < -3 f((4/3)^(1/4)) for every |x| in [lo, hi]."""
    lo, hi = parse_rational(lo), parse_rational(hi)
    if lo > hi:
        raise PreconditionFailed(f"empty length window [{lo}, {hi}]")
    pieces = settings.gap_pieces if pieces is None else pieces
    max_pieces = settings.gap_max_pieces if max_pieces is None else max_pieces
    width = settings.precision
    p = cert_f.p
    region = u_window(lo, hi)
    record = StepRecord(
        name="lemma_length_gap",
        lemma=f"every nonzero vector is nearly minimal or has length at least {label_rational(hi)}",
        inputs={"length_window": [format_rational(lo), format_rational(hi)], "u_window": region.to_json()},
    )

    at_min = record.add(
        enclosure_claim("f((4/3)^(1/4)) > 0", lambda w: profile_at_min(p, w), ">", 0)
    )

    def run() -> GapScan:
        threshold = -3 * profile_at_min(p, width)
        return scan_gap(p, region.lo, region.hi, threshold, pieces, max_pieces, width)

    start = time.monotonic()
    scan = run()
    detail = {
        "pieces": scan.pieces,
        "smallest_piece": format_rational(scan.min_width),
        "threshold": scan.threshold.to_json(),
    }
    if scan.witness is not None:
        detail["witness_u"] = [format_rational(x) for x in scan.witness]
    gap = record.add(
        Claim(
            f"f(x) < -3 f((4/3)^(1/4)) for |x| in [{label_rational(lo)}, {label_rational(hi)}]",
            ENCLOSURE,
            scan.verdict,
            "<",
            scan.upper,
            scan.threshold,
            detail,
            fresh=lambda: run().verdict,
        )
    )
    record.add(
        logic_claim(
            "poisson deduction",
            "f decreases on [0, 1.084], so the at most six nearly minimal vectors contribute at "
            "most 6 f((4/3)^(1/4)); a vector with length in the window and its negative contribute "
            "less than -6 f((4/3)^(1/4)); every other nonzero term is <= 0. The nonzero terms would "
            "sum below 0, but Poisson summation with f(0) = f_hat(0) and f_hat >= 0 makes them sum "
            "to at least 0.",
            [at_min, gap],
        )
    )
    log.info(
        "length gap: %s over %d pieces (%.1f ms)", scan.verdict, scan.pieces, (time.monotonic() - start) * 1000
    )
    return record.finish()


# ---------------------------------------------------------------------------
# At least six
# ---------------------------------------------------------------------------

def count_quotient(cert_g: RadialCertificate, width: Fraction) -> Interval:
    """(g_hat(0) - g(0)) / g((4/3)^(1/4))."""
    diff = cert_g.transform_at_origin - cert_g.normalization
    return (Interval.point(diff) / profile_at_min(cert_g.p, width / 1024)).simplify(bits_for(width) + 4)


def lemma_at_least_six(cert_g: RadialCertificate, sign_record: Optional[StepRecord] = None) -> StepRecord:
    """More than five nearly minimal vectors, via the count quotient of g."""
    record = StepRecord(
        name="lemma_at_least_six",
        lemma="there are more than five nearly minimal vectors",
        inputs={"certificate": cert_g.to_json()},
    )
    diff = record.add(
        exact_claim(
            "g_hat(0) - g(0) > 0",
            lambda: (cert_g.transform_at_origin - cert_g.normalization, Fraction(0)),
            ">",
        )
    )
    positive = record.add(
        enclosure_claim("g((4/3)^(1/4)) > 0", lambda w: profile_at_min(cert_g.p, w), ">", 0)
    )
    quotient = record.add(
        enclosure_claim(
            f"(g_hat(0) - g(0)) / g((4/3)^(1/4)) > {label_rational(COUNT_QUOTIENT)}",
            lambda w: count_quotient(cert_g, w),
            ">",
            COUNT_QUOTIENT,
        )
    )
    premises = [diff, positive, quotient]
    if sign_record is not None:
        premises += [sign_record.claim("(ii)"), sign_record.claim("(iii)")]
        if any(c.label.startswith("(iv)") for c in sign_record.claims):
            premises.append(sign_record.claim("(iv)"))
    record.add(
        logic_claim(
            "poisson deduction",
            "With g <= 0 beyond the gap and g_hat >= 0, Poisson summation gives "
            "g(0) + (count) * g((4/3)^(1/4)) >= g_hat(0), using that g decreases on the "
            "nearly minimal window; so the count exceeds 5.89 and is at least six.",
            premises,
        )
    )
    return record.finish()


# ---------------------------------------------------------------------------
# Empirical view of a concrete lattice
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EmpiricalView:
    """Lemma conclusions observed on one lattice rescaled to covolume 1."""

    minimal_length: Interval
    nearly_minimal: int
    gap_vectors: int
    uncertain: int

    def to_json(self) -> dict:
        return {
            "minimal_length": self.minimal_length.to_json(),
            "nearly_minimal": self.nearly_minimal,
            "gap_vectors": self.gap_vectors,
            "uncertain": self.uncertain,
        }


def empirical_lemma_check(gram: GramMatrix) -> EmpiricalView:
    """Minimal length, count of lengths below 1.114 and of lengths in [1.114, 1.62), at covolume 1."""
    width = settings.precision
    scale = covolume_scale(gram)
    shortest = minimal_norm(gram) / scale
    length = shortest.sqrt(bits_for(width) + 4)
    near = nearly_minimal_vectors(gram, 0, NEAR)
    gap = nearly_minimal_vectors(gram, NEAR, GAP_END)
    uncertain = sum(1 for v in (*near.vectors, *gap.vectors) if v.status != CERTAIN)
    return EmpiricalView(length, len(near.vectors), len(gap.vectors), uncertain)
