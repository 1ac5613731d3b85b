"""
Lattice Geometry — bases, Gram matrices, covolumes and duals

Bases are square matrices of Interval entries (rows = basis vectors) so
irrational bases such as the hexagonal one are stored as tight enclosures.
When the Gram matrix is known exactly (e.g. ((2,1),(1,2)) for the
hexagonal basis) it travels with the basis as `exact_gram`.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from ..config import settings
from ..errors import InputError, InvalidDimension, NotPositiveDefinite, SingularBasis
from ..exact.matrix import Matrix, as_matrix, determinant, identity, inverse, is_symmetric, ldl
from ..exact.rational import RationalLike, format_rational, parse_rational
from ..interval.interval import Interval, bits_for, enclose_sqrt_rational

log = logging.getLogger(__name__)

IntervalMatrix = tuple[tuple[Interval, ...], ...]


def working_bits() -> int:
    return bits_for(settings.precision) + 16


def _check_dimension(n: int) -> None:
    if n < 1:
        raise InvalidDimension("a lattice needs at least one basis vector")
    if n > settings.max_dimension:
        raise InvalidDimension(f"dimension {n} exceeds the supported cap {settings.max_dimension}")


def _parse_entry(value) -> Interval:
    if isinstance(value, Interval):
        return value
    if isinstance(value, (list, tuple)):
        return Interval.from_json(value)
    return Interval.point(parse_rational(value))


def _to_interval_matrix(rows: Sequence[Sequence]) -> IntervalMatrix:
    m = tuple(tuple(_parse_entry(x) for x in row) for row in rows)
    if not m or any(len(row) != len(m) for row in m):
        raise InputError("matrix must be square and nonempty")
    return m


def _exact_or_none(m: IntervalMatrix) -> Optional[Matrix]:
    if all(x.is_point for row in m for x in row):
        return tuple(tuple(x.lo for x in row) for row in m)
    return None


def interval_determinant(m: IntervalMatrix) -> Interval:
    """Cofactor expansion; exact for point matrices."""
    exact = _exact_or_none(m)
    if exact is not None:
        return Interval.point(determinant(exact))
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = Interval.point(0)
    for j in range(n):
        minor = tuple(row[:j] + row[j + 1:] for row in m[1:])
        term = m[0][j] * interval_determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def interval_inverse(m: IntervalMatrix) -> IntervalMatrix:
    """Gauss-Jordan over intervals; every pivot must exclude zero."""
    exact = _exact_or_none(m)
    if exact is not None:
        return tuple(tuple(Interval.point(x) for x in row) for row in inverse(exact))
    n = len(m)
    one, zero = Interval.point(1), Interval.point(0)
    a = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        candidates = [i for i in range(c, n) if a[i][c].lo > 0 or a[i][c].hi < 0]
        if not candidates:
            raise SingularBasis(f"no pivot excludes zero in column {c}")
        p = max(candidates, key=lambda i: min(abs(a[i][c].lo), abs(a[i][c].hi)))
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for i in range(n):
            if i != c:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(tuple(row[n:]) for row in a)


# ---------------------------------------------------------------------------
# Gram matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GramMatrix:
    """Symmetric positive-definite form; entries are Intervals (points when exact)."""

    entries: IntervalMatrix

    def __post_init__(self) -> None:
        n = len(self.entries)
        _check_dimension(n)
        for i in range(n):
            for j in range(i):
                a, b = self.entries[i][j], self.entries[j][i]
                if not a.intersects(b):
                    raise InputError(f"Gram matrix is not symmetric at ({i}, {j})")
        certify_positive_definite(self)

    @classmethod
    def from_rationals(cls, rows: Sequence[Sequence[RationalLike]]) -> GramMatrix:
        return cls(_to_interval_matrix(rows))

    @classmethod
    def parse_inline(cls, text: str) -> GramMatrix:
        """"a,b;b,c" with rational entries."""
        try:
            rows = [[parse_rational(x) for x in row.split(",")] for row in text.split(";")]
        except AttributeError as exc:
            raise InputError(f"cannot parse Gram matrix {text!r}") from exc
        return cls.from_rationals(rows)

    @property
    def dimension(self) -> int:
        return len(self.entries)

    @property
    def exact(self) -> Optional[Matrix]:
        return _exact_or_none(self.entries)

    def midpoint(self) -> Matrix:
        return tuple(tuple(x.mid for x in row) for row in self.entries)

    def max_radius(self) -> Fraction:
        return max(x.width / 2 for row in self.entries for x in row)

    def determinant(self) -> Interval:
        return interval_determinant(self.entries)

    def covolume(self, bits: Optional[int] = None) -> Interval:
        det = self.determinant()
        if det.hi <= 0:
            raise SingularBasis(f"Gram determinant {det} is not positive")
        det = Interval(max(det.lo, Fraction(0)), det.hi)
        if det.is_point:
            return enclose_sqrt_rational(det.lo, bits or working_bits())
        return det.sqrt(bits or working_bits())

    def norm(self, coords: Sequence[int]) -> Interval:
        """Q(x) = x^T G x, exact when G is."""
        n = self.dimension
        exact = self.exact
        if exact is not None:
            return Interval.point(
                sum((exact[i][j] * coords[i] * coords[j] for i in range(n) for j in range(n)), Fraction(0))
            )
        total = Interval.point(0)
        for i in range(n):
            for j in range(n):
                if coords[i] and coords[j]:
                    total = total + self.entries[i][j] * (coords[i] * coords[j])
        return total

    def scaled(self, c: RationalLike | Interval) -> GramMatrix:
        c = c if isinstance(c, Interval) else Interval.point(parse_rational(c))
        return GramMatrix(tuple(tuple(x * c for x in row) for row in self.entries))

    def to_json(self) -> dict:
        exact = self.exact
        if exact is not None:
            gram = [[format_rational(x) for x in row] for row in exact]
        else:
            gram = [[x.to_json() for x in row] for row in self.entries]
        return {"dimension": self.dimension, "gram": gram}


def certify_positive_definite(gram: GramMatrix) -> None:
    """Exact LDL^T on the Gram matrix, or on mid - delta*I for interval entries.

    For any G in the entrywise box, ||G - mid||_2 <= n * max radius = delta,
    so mid - delta*I positive definite implies G positive definite.
    """
    exact = gram.exact
    if exact is not None:
        if not is_symmetric(exact):
            raise InputError("Gram matrix is not symmetric")
        ldl(exact)
        return
    lower = shifted_midpoint(gram)
    try:
        ldl(lower)
    except NotPositiveDefinite as exc:
        raise NotPositiveDefinite(f"interval Gram matrix not certified positive definite: {exc}") from exc


def shifted_midpoint(gram: GramMatrix) -> Matrix:
    """mid - delta*I with delta = n * max entry radius: a lower bound for every form in the box."""
    n = gram.dimension
    mid = gram.midpoint()
    delta = n * gram.max_radius()
    return tuple(
        tuple((mid[i][j] + mid[j][i]) / 2 - (delta if i == j else 0) for j in range(n)) for i in range(n)
    )


def dual_gram(gram: GramMatrix) -> GramMatrix:
    """Gram matrix of the dual lattice: the inverse form."""
    return GramMatrix(interval_inverse(gram.entries))


# ---------------------------------------------------------------------------
# Bases
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeBasis:
    rows: IntervalMatrix
    exact_gram: Optional[Matrix] = None

    def __post_init__(self) -> None:
        _check_dimension(len(self.rows))
        if any(len(row) != len(self.rows) for row in self.rows):
            raise InputError("basis must be a square matrix")
        det = interval_determinant(self.rows)
        if det.lo <= 0 <= det.hi:
            raise SingularBasis(f"basis determinant {det} does not exclude zero")

    @property
    def dimension(self) -> int:
        return len(self.rows)

    @classmethod
    def from_rationals(cls, rows: Sequence[Sequence]) -> LatticeBasis:
        m = _to_interval_matrix(rows)
        exact = _exact_or_none(m)
        gram = None
        if exact is not None:
            gram = tuple(
                tuple(sum((a * b for a, b in zip(r1, r2)), Fraction(0)) for r2 in exact) for r1 in exact
            )
        return cls(m, gram)

    @classmethod
    def identity(cls, n: int) -> LatticeBasis:
        return cls.from_rationals(identity(n))

    @classmethod
    def hexagonal(cls, bits: Optional[int] = None) -> LatticeBasis:
        """v = (sqrt 2, 0), w = (sqrt 2 / 2, sqrt 6 / 2); Gram ((2,1),(1,2)), covolume sqrt 3."""
        bits = bits or working_bits()
        r2 = enclose_sqrt_rational(2, bits)
        r6 = enclose_sqrt_rational(6, bits)
        rows = ((r2, Interval.point(0)), (r2 / 2, r6 / 2))
        return cls(rows, as_matrix([[2, 1], [1, 2]]))

    @classmethod
    def from_json(cls, data: dict) -> LatticeBasis:
        if "basis" not in data:
            raise InputError("lattice JSON has no 'basis'")
        return cls.from_rationals(data["basis"])

    def scaled(self, c: RationalLike | Interval) -> LatticeBasis:
        c = c if isinstance(c, Interval) else Interval.point(parse_rational(c))
        rows = tuple(tuple(x * c for x in row) for row in self.rows)
        gram = None
        if self.exact_gram is not None and c.is_point:
            gram = tuple(tuple(x * c.lo * c.lo for x in row) for row in self.exact_gram)
        return LatticeBasis(rows, gram)

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "basis": [[x.to_json() for x in row] for row in self.rows]}


def interval_gram(basis: LatticeBasis) -> IntervalMatrix:
    n = basis.dimension
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = Interval.point(0)
            for a, b in zip(basis.rows[i], basis.rows[j]):
                acc = acc + a * b
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def gram_and_covolume(basis: LatticeBasis, bits: Optional[int] = None) -> tuple[GramMatrix, Interval]:
    """Gram = B B^T and covolume = sqrt(det Gram).

    A symbolically exact Gram is used when it lies inside the interval Gram.
    """
    enclosed = interval_gram(basis)
    if basis.exact_gram is not None:
        if not all(enclosed[i][j].contains(basis.exact_gram[i][j])
                   for i in range(basis.dimension) for j in range(basis.dimension)):
            raise InputError("exact Gram matrix is not consistent with the basis enclosure")
        gram = GramMatrix.from_rationals(basis.exact_gram)
    else:
        gram = GramMatrix(enclosed)
    return gram, gram.covolume(bits)


def dual_basis(basis: LatticeBasis) -> LatticeBasis:
    """Inverse transpose of the basis matrix; its Gram is the inverse Gram."""
    inv = interval_inverse(basis.rows)
    n = basis.dimension
    rows = tuple(tuple(inv[j][i] for j in range(n)) for i in range(n))
    gram = inverse(basis.exact_gram) if basis.exact_gram is not None else None
    return LatticeBasis(rows, gram)


# ---------------------------------------------------------------------------
# Lattice files
# ---------------------------------------------------------------------------

def load_lattice(path: str | Path) -> GramMatrix | LatticeBasis:
    """{"dimension": n, "gram": [...]} or {"basis": [...]}."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read lattice {path}: {exc}") from exc
    return lattice_from_json(data)


def lattice_from_json(data: dict) -> GramMatrix | LatticeBasis:
    if not isinstance(data, dict):
        raise InputError("lattice JSON must be an object")
    if "gram" in data:
        gram = GramMatrix(_to_interval_matrix(data["gram"]))
        if "dimension" in data and data["dimension"] != gram.dimension:
            raise InputError(f"dimension {data['dimension']} does not match the Gram matrix")
        return gram
    if "basis" in data:
        return LatticeBasis.from_json(data)
    raise InputError("lattice JSON needs 'gram' or 'basis'")


def as_gram(lattice: GramMatrix | LatticeBasis) -> GramMatrix:
    if isinstance(lattice, GramMatrix):
        return lattice
    return gram_and_covolume(lattice)[0]
