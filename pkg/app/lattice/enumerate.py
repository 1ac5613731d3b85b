"""
Short-vector enumeration (Fincke-Pohst on an LLL-reduced form).

Completeness: every nonzero integer vector x with Q(x) <= bound is
returned. For an exact Gram the search runs on the form itself. For an
interval Gram it runs on mid - delta*I, which lies below every form in the
box, so no vector of any admissible form is missed; each candidate is then
classified from its interval norm:

    certain   norm enclosure inside [0, bound]
    possible  norm enclosure straddles bound
    (excluded candidates are dropped)
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..config import settings
from ..errors import BoundTooLargeForBudget, PreconditionFailed
from ..exact.matrix import Matrix, ldl
from ..exact.rational import RationalLike, format_rational, parse_rational
from ..interval.interval import Interval
from .gram import GramMatrix, shifted_midpoint, working_bits
from .reduction import lll_reduce

log = logging.getLogger(__name__)

CERTAIN = "certain"
POSSIBLE = "possible"


@dataclass(frozen=True)
class ShortVector:
    coords: tuple[int, ...]
    norm: Interval
    status: str = CERTAIN

    def to_json(self) -> dict:
        out = {"coords": list(self.coords), "status": self.status}
        if self.norm.is_point:
            out["norm"] = format_rational(self.norm.lo)
        else:
            out["norm"] = self.norm.to_json()
        return out


@dataclass(frozen=True)
class ShortVectorReport:
    bound: Fraction
    vectors: tuple[ShortVector, ...]
    nodes: int = 0

    @property
    def minimal_norm(self) -> Optional[Interval]:
        if not self.vectors:
            return None
        return Interval(min(v.norm.lo for v in self.vectors), min(v.norm.hi for v in self.vectors))

    @property
    def all_certain(self) -> bool:
        return all(v.status == CERTAIN for v in self.vectors)

    def closed_under_negation(self) -> bool:
        coords = {v.coords for v in self.vectors}
        return all(tuple(-c for c in x) in coords for x in coords)

    def to_json(self) -> dict:
        minimal = self.minimal_norm
        return {
            "bound": format_rational(self.bound),
            "count": len(self.vectors),
            "minimal_norm": None if minimal is None else minimal.to_json(),
            "vectors": [v.to_json() for v in self.vectors],
        }


# ---------------------------------------------------------------------------
# Fincke-Pohst
# ---------------------------------------------------------------------------

def _fincke_pohst(lower: Matrix, d: tuple[Fraction, ...], bound: Fraction, budget: int) -> tuple[list[tuple[int, ...]], int]:
    """All integer y with sum_i d_i (y_i + sum_{j>i} L_ji y_j)^2 <= bound."""
    n = len(d)
    found: list[tuple[int, ...]] = []
    y = [0] * n
    nodes = 0

    def search(i: int, remaining: Fraction) -> None:
        nonlocal nodes
        center = -sum((lower[j][i] * y[j] for j in range(i + 1, n)), Fraction(0))
        t = remaining / d[i]
        reach = math.isqrt(math.ceil(t)) + 1
        for yi in range(math.floor(center) - reach, math.ceil(center) + reach + 1):
            dev = (yi - center) ** 2
            if dev > t:
                continue
            nodes += 1
            if nodes > budget:
                raise BoundTooLargeForBudget(f"enumeration exceeded {budget} nodes")
            y[i] = yi
            if i == 0:
                found.append(tuple(y))
            else:
                search(i - 1, remaining - d[i] * dev)
        y[i] = 0

    search(n - 1, bound)
    return found, nodes


def enumerate_vectors_below(
    gram: GramMatrix,
    bound: RationalLike,
    budget: Optional[int] = None,
) -> ShortVectorReport:
    """Every nonzero integer vector with Q-value <= bound, in lexicographic order."""
    bound = parse_rational(bound)
    if bound <= 0:
        raise PreconditionFailed(f"enumeration bound must be positive, got {bound}")
    budget = settings.enum_budget if budget is None else budget

    search_form = gram.exact if gram.exact is not None else shifted_midpoint(gram)
    u, reduced = lll_reduce(search_form)
    lower, d = ldl(reduced)
    ys, nodes = _fincke_pohst(lower, d, bound, budget)

    n = gram.dimension
    vectors = []
    for y in ys:
        x = tuple(sum(y[i] * u[i][j] for i in range(n)) for j in range(n))
        if not any(x):
            continue
        norm = gram.norm(x)
        if norm.hi <= bound:
            vectors.append(ShortVector(x, norm, CERTAIN))
        elif norm.lo <= bound:
            vectors.append(ShortVector(x, norm, POSSIBLE))
    vectors.sort(key=lambda v: v.coords)
    log.debug("enumerated %d vectors below %s in %d nodes", len(vectors), bound, nodes)
    return ShortVectorReport(bound, tuple(vectors), nodes)


def minimal_norm(gram: GramMatrix) -> Interval:
    """Enclosure of min Q(x) over nonzero integer x."""
    bound = min(gram.entries[i][i].hi for i in range(gram.dimension))
    report = enumerate_vectors_below(gram, bound)
    return report.minimal_norm


def kissing_number(report: ShortVectorReport) -> int:
    """Vectors that may attain the minimal norm (exactly those that do, for exact Grams)."""
    minimal = report.minimal_norm
    if minimal is None:
        return 0
    return sum(1 for v in report.vectors if v.norm.lo <= minimal.hi)


def shortest_vectors(gram: GramMatrix) -> ShortVectorReport:
    minimal = minimal_norm(gram)
    report = enumerate_vectors_below(gram, minimal.hi)
    return report


# ---------------------------------------------------------------------------
# Nearly minimal vectors (covolume-1 normalization)
# ---------------------------------------------------------------------------

def _as_interval(value: Interval | RationalLike) -> Interval:
    return value if isinstance(value, Interval) else Interval.point(parse_rational(value))


def covolume_scale(gram: GramMatrix) -> Interval:
    """det(G)^(1/n): divides norms to rescale the lattice to covolume 1."""
    det = gram.determinant()
    det = Interval(max(det.lo, Fraction(0)), det.hi)
    return det.root(gram.dimension, working_bits())


def nearly_minimal_vectors(
    gram: GramMatrix,
    lower: Interval | RationalLike,
    upper: Interval | RationalLike,
) -> ShortVectorReport:
    """Vectors whose length after rescaling to covolume 1 lies in [lower, upper).

    Norms in the report are the rescaled squared lengths.
    """
    lo_sq = _as_interval(lower) ** 2
    hi_sq = _as_interval(upper) ** 2
    scale = covolume_scale(gram)
    report = enumerate_vectors_below(gram, hi_sq.hi * scale.hi)
    out = []
    for v in report.vectors:
        rescaled = v.norm / scale
        if rescaled.hi < lo_sq.lo or rescaled.lo >= hi_sq.hi:
            continue
        inside = rescaled.lo >= lo_sq.hi and rescaled.hi < hi_sq.lo and v.status == CERTAIN
        out.append(ShortVector(v.coords, rescaled, CERTAIN if inside else POSSIBLE))
    return ShortVectorReport(hi_sq.hi, tuple(out), report.nodes)
