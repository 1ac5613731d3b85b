"""
Geometry of the six nearly minimal vectors.

From the counting lemmas: exactly six nearly minimal vectors, two of them
(x, y) within angle 2*pi/6, with x - y nearly minimal too, so x and y span
the lattice. Rescaling by 3^(1/4) turns the Gram matrix of (x, y) into a
perturbation of ((2, 1), (1, 2)) with entries off by at most 0.243.
"""

from __future__ import annotations

import logging
from fractions import Fraction

from ..exact.rational import label_rational
from ..interval.elementary import enclose_cos, enclose_pi
from ..interval.interval import Interval, bits_for
from .constants import (
    ARC,
    DIFF_BOUND,
    ENTRY_BOUND,
    GAP_END,
    INNER_END,
    NEAR,
    RESCALED_LENGTH_END,
    RESCALED_NORM_END,
    RHO_MAX,
)
from .report import StepRecord, contains_claim, enclosure_claim, exact_claim, logic_claim

log = logging.getLogger(__name__)

SIXTH_TURN = Fraction(1, 6)


def _cos_turns(turns: Fraction, width: Fraction) -> Interval:
    return enclose_cos(enclose_pi(width / 16) * 2 * turns, width)


def diff_norm_bound(width: Fraction) -> Interval:
    """2*1.114^2 - (4/3)^(1/2)."""
    return 2 * NEAR * NEAR - Interval.point(Fraction(4, 3)).sqrt(bits_for(width) + 4)


def rescaled_norm_end(width: Fraction) -> Interval:
    """3^(1/2) * 1.114^2."""
    return Interval.point(3).sqrt(bits_for(width) + 4) * (NEAR * NEAR)


def rescaled_length_end(width: Fraction) -> Interval:
    """3^(1/4) * 1.114."""
    return Interval.point(3).root(4, bits_for(width) + 4) * NEAR


def inner_product_end(width: Fraction) -> Interval:
    """1.467^2 * cos(2*pi*0.152)."""
    return _cos_turns(ARC, width) * (RESCALED_LENGTH_END * RESCALED_LENGTH_END)


def geometry_argument() -> StepRecord:
    record = StepRecord(
        name="geometry_argument",
        lemma=(
            "two nearly minimal vectors within angle 2*pi/6 form a basis whose rescaled Gram "
            f"matrix has entries within {label_rational(ENTRY_BOUND)} of ((2, 1), (1, 2))"
        ),
    )

    # (a) x - y is nearly minimal
    diff = record.add(enclosure_claim(f"(a) 2*1.114^2 - (4/3)^(1/2) < {label_rational(DIFF_BOUND)}", diff_norm_bound, "<", DIFF_BOUND))
    below_gap = record.add(exact_claim(f"(a) {label_rational(DIFF_BOUND)} < {label_rational(GAP_END)}^2", lambda: (DIFF_BOUND, GAP_END * GAP_END), "<"))
    record.add(
        logic_claim(
            "(a) x - y nearly minimal",
            "|x - y|^2 <= |x|^2 + |y|^2 - 2|x||y|cos(2*pi/6) < 1.33 < 1.62^2; the length gap "
            "excludes [1.114, 1.62], so |x - y| < 1.114.",
            [diff, below_gap],
        )
    )

    # (b) basis
    half = record.add(contains_claim("(b) cos(2*pi/6) = 1/2", lambda w: _cos_turns(SIXTH_TURN, w), Fraction(1, 2), Fraction(1, 10**12)))
    record.add(
        logic_claim(
            "(b) x, y form a basis",
            "A lattice vector z outside the span of a shortest counterexample would satisfy "
            "cos(theta) <= |u|/(2|z|) < 1/2 = cos(2*pi/6) for some shorter u; the six listed "
            "vectors x, y, x - y and their negatives exhaust the nearly minimal ones.",
            [half],
        )
    )

    # (c) rescaled Gram entries
    record.add(exact_claim("(c) 3 * (4/3) = 2^2", lambda: (3 * Fraction(4, 3), Fraction(4)), "="))
    norm_end = record.add(enclosure_claim(f"(c) 3^(1/2) * 1.114^2 < {label_rational(RESCALED_NORM_END)}", rescaled_norm_end, "<", RESCALED_NORM_END))
    length_end = record.add(
        enclosure_claim(f"(c) 3^(1/4) * 1.114 < {label_rational(RESCALED_LENGTH_END)}", rescaled_length_end, "<", RESCALED_LENGTH_END)
    )
    inner_end = record.add(
        enclosure_claim(f"(c) {label_rational(RESCALED_LENGTH_END)}^2 * cos(2*pi*{label_rational(ARC)}) < {label_rational(INNER_END)}", inner_product_end, "<", INNER_END)
    )
    inner_start = record.add(
        contains_claim("(c) 2 * cos(2*pi/6) = 1", lambda w: _cos_turns(SIXTH_TURN, w) * 2, Fraction(1), Fraction(1, 10**12))
    )
    record.add(
        logic_claim(
            "(c) rescaled window",
            "After scaling by 3^(1/4), norms lie in [2, 2.16) and inner products in [1, 1.243].",
            [norm_end, length_end, inner_end, inner_start],
        )
    )

    # (d) perturbation size
    record.add(exact_claim(f"(d) {label_rational(RESCALED_NORM_END)} - 2 <= {label_rational(ENTRY_BOUND)}", lambda: (RESCALED_NORM_END - 2, ENTRY_BOUND), "<="))
    record.add(exact_claim(f"(d) {label_rational(INNER_END)} - 1 <= {label_rational(ENTRY_BOUND)}", lambda: (INNER_END - 1, ENTRY_BOUND), "<="))
    record.add(exact_claim(f"(d) {label_rational(ENTRY_BOUND)} < 12/47", lambda: (ENTRY_BOUND, RHO_MAX), "<"))
    log.info("geometry argument: %s", record.verdict)
    return record.finish()
