"""
Strict-inequality protocol.

"A < B" is verified when enclosure(A).hi < enclosure(B).lo and falsified
when enclosure(A).lo >= enclosure(B).hi. Overlap triggers refinement of the
target width; after the configured number of refinements the verdict is
inconclusive. There is no fallback to a guess.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from ..config import settings
from .interval import Interval

log = logging.getLogger(__name__)

VERIFIED = "verified"
FALSIFIED = "falsified"
INCONCLUSIVE = "inconclusive"

Enclosure = Union[Interval, Fraction, int, Callable[[Fraction], Interval]]


@dataclass(frozen=True)
class Comparison:
    label: str
    verdict: str
    lhs: Interval
    rhs: Interval
    target_width: Fraction

    @property
    def verified(self) -> bool:
        return self.verdict == VERIFIED

    def to_json(self) -> dict:
        return {
            "claim": self.label,
            "verdict": self.verdict,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
        }


def _materialize(value: Enclosure, width: Fraction) -> Interval:
    if isinstance(value, Interval):
        return value
    if callable(value):
        return value(width)
    return Interval.point(value)


def decide_less(lhs: Interval, rhs: Interval) -> Optional[bool]:
    """True / False when decided, None on overlap."""
    if lhs.hi < rhs.lo:
        return True
    if lhs.lo >= rhs.hi:
        return False
    return None


def certify_less(
    lhs: Enclosure,
    rhs: Enclosure,
    label: str = "lhs < rhs",
    target_width: Optional[Fraction] = None,
    max_refine: Optional[int] = None,
    refine_factor: Optional[int] = None,
) -> Comparison:
    """Decide lhs < rhs; callables are re-evaluated at finer widths on overlap."""
    width = settings.precision if target_width is None else Fraction(target_width)
    rounds = settings.max_refine if max_refine is None else max_refine
    factor = settings.refine_factor if refine_factor is None else refine_factor

    for attempt in range(rounds + 1):
        used = width
        a = _materialize(lhs, used)
        b = _materialize(rhs, used)
        decided = decide_less(a, b)
        if decided is not None:
            return Comparison(label, VERIFIED if decided else FALSIFIED, a, b, used)
        if not (callable(lhs) or callable(rhs)):
            break
        log.debug("%s overlaps at width %s (attempt %d)", label, width, attempt)
        width = width / factor
    return Comparison(label, INCONCLUSIVE, a, b, used)
