"""
Perturbations of the hexagonal form

    Q_rho = ((2 + a, 1 + b), (1 + b, 2 + c)),  rho = max(|a|, |b|, |c|)

with determinant D_rho = 3 + 2(a + c - b) + (ac - b^2) and minimal norm
M_rho. Density is (pi/4) * M_rho / sqrt(D_rho), so comparing it with the
hexagonal pi/sqrt(12) decides local optimality for one concrete perturbation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..config import settings
from ..errors import PreconditionFailed
from ..exact.matrix import Matrix, determinant
from ..exact.rational import RationalLike, format_rational, parse_rational
from ..interval.interval import Interval
from ..lattice.density import density_from_invariants
from ..lattice.enumerate import minimal_norm
from ..lattice.gram import GramMatrix

log = logging.getLogger(__name__)

BELOW = "below"
ABOVE = "above"
EQUAL = "equal"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class Reduction:
    """Q_rho = scale * ((2 + A, 1 + B), (1 + B, 2 + C)) with A + C = B."""

    scale: Fraction
    A: Fraction
    B: Fraction
    C: Fraction


@dataclass(frozen=True)
class PerturbedGram:
    a: Fraction
    b: Fraction
    c: Fraction

    @classmethod
    def of(cls, a: RationalLike, b: RationalLike, c: RationalLike) -> PerturbedGram:
        return cls(parse_rational(a), parse_rational(b), parse_rational(c))

    @property
    def rho(self) -> Fraction:
        return max(abs(self.a), abs(self.b), abs(self.c))

    @property
    def matrix(self) -> Matrix:
        return ((2 + self.a, 1 + self.b), (1 + self.b, 2 + self.c))

    @property
    def D_rho(self) -> Fraction:
        return 3 + 2 * (self.a + self.c - self.b) + (self.a * self.c - self.b * self.b)

    @property
    def gram(self) -> GramMatrix:
        """Raises NotPositiveDefinite when the perturbation leaves the cone."""
        return GramMatrix.from_rationals(self.matrix)

    @property
    def M_rho(self) -> Fraction:
        m = minimal_norm(self.gram)
        return m.lo

    @property
    def proportional_to_hexagonal(self) -> bool:
        return self.a == self.c == 2 * self.b

    def reduced(self) -> Reduction:
        """Rescale so that the perturbation satisfies A + C = B."""
        denom = 3 + self.a + self.c - self.b
        if denom == 0:
            raise PreconditionFailed(f"perturbation {self} has a + c - b = -3")
        a, b, c = self.a, self.b, self.c
        scale = denom / 3
        return Reduction(
            scale=scale,
            A=(a - 2 * c + 2 * b) / denom,
            B=(4 * b - a - c) / denom,
            C=(2 * b + c - 2 * a) / denom,
        )

    def to_json(self) -> dict:
        return {
            "a": format_rational(self.a),
            "b": format_rational(self.b),
            "c": format_rational(self.c),
            "rho": format_rational(self.rho),
            "D_rho": format_rational(self.D_rho),
        }


def reduced_matrix(r: Reduction) -> Matrix:
    return tuple(tuple(r.scale * x for x in row) for row in ((2 + r.A, 1 + r.B), (1 + r.B, 2 + r.C)))


def reduction_holds(pg: PerturbedGram) -> bool:
    """Exact check of the rescaling identity and A + C = B."""
    r = pg.reduced()
    return reduced_matrix(r) == pg.matrix and r.A + r.C == r.B and pg.D_rho == determinant(pg.matrix)


def perturbed_density(
    a: RationalLike,
    b: RationalLike,
    c: RationalLike,
    target_width: Optional[Fraction] = None,
) -> Interval:
    """Enclosure of (pi/4) * M_rho / sqrt(D_rho)."""
    width = settings.precision if target_width is None else target_width
    pg = PerturbedGram.of(a, b, c)
    m = pg.M_rho
    return density_from_invariants(2, Interval.point(m), Interval.point(pg.D_rho), width)


def hexagonal_density(target_width: Optional[Fraction] = None) -> Interval:
    """pi / sqrt(12)."""
    return perturbed_density(0, 0, 0, target_width)


def compare_with_hexagonal(a: RationalLike, b: RationalLike, c: RationalLike) -> str:
    """below, above, equal (a rescaled hexagonal form) or undecided (overlap at the cap)."""
    pg = PerturbedGram.of(a, b, c)
    if pg.proportional_to_hexagonal:
        return EQUAL
    width = settings.precision
    for _ in range(settings.max_refine + 1):
        ours = perturbed_density(pg.a, pg.b, pg.c, width)
        hexagonal = hexagonal_density(width)
        if ours.hi < hexagonal.lo:
            return BELOW
        if ours.lo > hexagonal.hi:
            log.error("perturbation %s beats the hexagonal density", pg.to_json())
            return ABOVE
        width /= settings.refine_factor
    return UNDECIDED
