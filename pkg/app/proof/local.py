"""
Local optimality of the hexagonal form.

For a perturbation of size rho < 12/47, either Q_rho is proportional to
((2, 1), (1, 2)) or it is strictly less dense. The computational skeleton:

  (i)   a + c = b forces min(a, c, -b) <= -rho/2       finite exact case check
  (ii)  3(2 - rho/2)^2 < 4(3 - 2 rho^2) on (0, 24/35)   polynomial identity + Sturm
  (iii) the rescaling bounds |A|, |C| <= 5rho/(3 - 3rho) and |B| <= 2rho/(1 - rho)
        stay below 24/35 for rho < 12/47               endpoint value + monotonicity
"""

from __future__ import annotations

import itertools
import logging
from fractions import Fraction

from ..errors import PreconditionFailed
from ..exact.polynomial import Polynomial
from ..exact.rational import RationalLike, format_rational, label_rational, parse_rational
from ..exact.sturm import Region, sturm_root_count
from .constants import RHO_CRITICAL, RHO_MAX
from .perturbed import PerturbedGram, reduction_holds
from .report import Claim, StepRecord, exact_claim, identity_claim, logic_claim, sign_claim

log = logging.getLogger(__name__)

Point = tuple[Fraction, Fraction]

# boundary of max(|a|, |c|, |a + c|) = 1, counterclockwise
HEXAGON: tuple[Point, ...] = tuple(
    (Fraction(a), Fraction(c)) for a, c in ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))
)

# min(a, c, -(a + c)) changes branch where two of the three agree
_BREAK_LINES = (
    lambda a, c: a - c,
    lambda a, c: 2 * a + c,
    lambda a, c: a + 2 * c,
)

RHO = Polynomial.monomial(1)


def check_rho_max(rho_max: RationalLike) -> Fraction:
    rho_max = parse_rational(rho_max)
    if rho_max <= 0:
        raise PreconditionFailed(f"rho_max must be positive, got {rho_max}")
    if rho_max > RHO_MAX:
        raise PreconditionFailed(f"rho_max = {rho_max} exceeds 12/47")
    return rho_max


def constrained_minimum(a: RationalLike, b: RationalLike, c: RationalLike) -> Fraction:
    """min(a, c, -b); the norms of e1, e2, e1 - e2 are 2 + a, 2 + c, 2 - b when a + c = b."""
    a, b, c = parse_rational(a), parse_rational(b), parse_rational(c)
    return min(a, c, -b)


# ---------------------------------------------------------------------------
# (i) constrained case
# ---------------------------------------------------------------------------

def _edge_candidates(p: Point, q: Point) -> list[Point]:
    out = [p, q]
    for line in _BREAK_LINES:
        lp, lq = line(*p), line(*q)
        if lp != lq:
            t = lp / (lp - lq)
            if 0 <= t <= 1:
                out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def edge_maximum(p: Point, q: Point) -> Fraction:
    """max of min(a, c, -(a + c)) along the segment pq; the function is concave and piecewise linear."""
    return max(min(a, c, -(a + c)) for a, c in _edge_candidates(p, q))


def constrained_cases() -> list[tuple[Point, Point]]:
    return [(HEXAGON[k], HEXAGON[(k + 1) % len(HEXAGON)]) for k in range(len(HEXAGON))]


# ---------------------------------------------------------------------------
# (ii) quadratic inequality
# ---------------------------------------------------------------------------

def quadratic_gap() -> Polynomial:
    """3(2 - rho/2)^2 - 4(3 - 2 rho^2)."""
    m = Polynomial([2, Fraction(-1, 2)])
    return (m * m).scale(3) - Polynomial([3, 0, -2]).scale(4)


def factored_gap() -> Polynomial:
    """rho (35 rho - 24) / 4."""
    return (RHO * Polynomial([-24, 35])).scale(Fraction(1, 4))


# ---------------------------------------------------------------------------
# (iii) rescaling bounds
# ---------------------------------------------------------------------------

def diagonal_bound(rho: Fraction) -> Fraction:
    """Bound on |A| and |C|: 5 rho / (3 - 3 rho)."""
    return 5 * rho / (3 - 3 * rho)


def off_diagonal_bound(rho: Fraction) -> Fraction:
    """Bound on |B|: 2 rho / (1 - rho)."""
    return 2 * rho / (1 - rho)


# (numerator, denominator) of each bound as polynomials in rho
_BOUNDS = {
    "5rho/(3-3rho)": (Polynomial([0, 5]), Polynomial([3, -3])),
    "2rho/(1-rho)": (Polynomial([0, 2]), Polynomial([1, -1])),
}


def _quotient_derivative_numerator(num: Polynomial, den: Polynomial) -> Polynomial:
    return num.derivative() * den - num * den.derivative()


def _corner_ratio(rho: Fraction) -> Fraction:
    """Largest |A|/bound, |B|/bound, |C|/bound over the sign corners of size rho."""
    worst = Fraction(0)
    for a, b, c in itertools.product((-rho, Fraction(0), rho), repeat=3):
        if not (a or b or c):
            continue
        r = PerturbedGram(a, b, c).reduced()
        worst = max(
            worst,
            abs(r.A) / diagonal_bound(rho),
            abs(r.C) / diagonal_bound(rho),
            abs(r.B) / off_diagonal_bound(rho),
        )
    return worst


def _corners_reduce(rho: Fraction) -> bool:
    return all(
        reduction_holds(PerturbedGram(a, b, c))
        for a, b, c in itertools.product((-rho, Fraction(0), rho), repeat=3)
    )


# ---------------------------------------------------------------------------
# Step
# ---------------------------------------------------------------------------

def local_optimality_certificate(rho_max: RationalLike = RHO_MAX) -> StepRecord:
    rho_max = check_rho_max(rho_max)
    record = StepRecord(
        name="local_optimality_certificate",
        lemma=(
            f"for rho < {label_rational(rho_max)} either D_rho^(-1/2) M_rho < D^(-1/2) M "
            "or Q_rho is proportional to Q"
        ),
        inputs={"rho_max": format_rational(rho_max), "rho_critical": format_rational(RHO_CRITICAL)},
    )
    half = Fraction(-1, 2)

    # (i)
    cases: list[Claim] = []
    for k, (p, q) in enumerate(constrained_cases(), 1):
        cases.append(
            record.add(
                exact_claim(
                    f"(i) case {k}: max min(a, c, -b) on edge {_point_text(p)}-{_point_text(q)} <= -1/2",
                    lambda p=p, q=q: (edge_maximum(p, q), half),
                    "<=",
                )
            )
        )
    record.add(
        logic_claim(
            "(i) constrained case",
            "When a + c = b, scaling to rho = 1 puts (a, c) on the hexagon max(|a|, |c|, |a + c|) = 1, "
            "so one of a, c, -b is <= -rho/2. The norms 2 + a, 2 + c, 2 - b of e1, e2, e1 - e2 give "
            "M_rho <= 2 - rho/2, and D_rho = 3 + ac - b^2 >= 3 - 2 rho^2.",
            cases,
        )
    )

    # (ii)
    gap = factored_gap()
    identity = record.add(identity_claim("(ii) 3(2 - rho/2)^2 - 4(3 - 2rho^2) = rho(35rho - 24)/4", lambda: (quadratic_gap(), factored_gap())))
    at_zero = record.add(exact_claim("(ii) value at rho = 0", lambda: (gap.evaluate(0), Fraction(0)), "="))
    at_critical = record.add(exact_claim("(ii) value at rho = 24/35", lambda: (gap.evaluate(RHO_CRITICAL), Fraction(0)), "="))
    roots = record.add(
        exact_claim(
            "(ii) roots in (0, 24/35]",
            lambda: (Fraction(sturm_root_count(gap, Region.closed(0, RHO_CRITICAL))), Fraction(1)),
            "=",
        )
    )
    inside = record.add(exact_claim("(ii) value at rho = 12/35", lambda: (gap.evaluate(Fraction(12, 35)), Fraction(0)), "<"))
    below = record.add(sign_claim("(ii) 35rho - 24 < 0 up to rho_max", Polynomial([-24, 35]), Region.closed(0, rho_max), "<0"))
    record.add(
        logic_claim(
            "(ii) strict inequality",
            "The only roots of rho(35rho - 24) in [0, 24/35] are its endpoints and it is negative "
            "inside, so (2 - rho/2) (3 - 2rho^2)^(-1/2) < 2 * 3^(-1/2) for 0 < rho < 24/35.",
            [identity, at_zero, at_critical, roots, inside, below],
        )
    )

    # (iii)
    premises: list[Claim] = []
    premises.append(
        record.add(
            exact_claim(
                f"(iii) 5rho/(3-3rho) < 24/35 at rho = {label_rational(rho_max)}",
                lambda: (diagonal_bound(rho_max), RHO_CRITICAL),
                "<",
            )
        )
    )
    premises.append(
        record.add(
            exact_claim(
                f"(iii) 2rho/(1-rho) <= 24/35 at rho = {label_rational(rho_max)}",
                lambda: (off_diagonal_bound(rho_max), RHO_CRITICAL),
                "<=",
            )
        )
    )
    for name, (num, den) in _BOUNDS.items():
        premises.append(record.add(sign_claim(f"(iii) denominator of {name} positive", den, Region.closed(0, rho_max), ">0")))
        premises.append(
            record.add(
                sign_claim(
                    f"(iii) {name} increasing",
                    _quotient_derivative_numerator(num, den),
                    Region.closed(0, rho_max),
                    ">0",
                )
            )
        )
    premises.append(
        record.add(exact_claim("(iii) reduction identity at the sign corners", lambda: (Fraction(int(_corners_reduce(rho_max))), Fraction(1)), "="))
    )
    premises.append(
        record.add(exact_claim("(iii) corner perturbations within the bounds", lambda: (_corner_ratio(rho_max), Fraction(1)), "<="))
    )
    record.add(
        logic_claim(
            "(iii) reduction",
            "Both bounds increase on [0, rho_max], so for rho < rho_max the rescaled perturbation "
            "(A, B, C) with A + C = B has size below 24/35 and (i) and (ii) apply to it.",
            premises,
        )
    )
    log.info("local optimality (rho_max=%s): %s", rho_max, record.verdict)
    return record.finish()


def _point_text(p: Point) -> str:
    return f"({label_rational(p[0])}, {label_rational(p[1])})"
