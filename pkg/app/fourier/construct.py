"""
Certificate construction from linear constraints.

Every supported constraint is linear in the coefficients of p, so the
admissible profiles form the null space of an exact rational matrix. A
certificate exists iff that null space is one-dimensional (the scaling
freedom); the solution is returned with primitive integer coefficients
and p(0) > 0.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from ..errors import DegenerateConstraint, InputError, Overdetermined, Underdetermined
from ..exact.matrix import nullspace
from ..exact.polynomial import Polynomial
from ..exact.rational import RationalLike, format_rational, parse_rational
from .certificate import RadialCertificate
from .laguerre import dimension_alpha, fourier_transform_polynomial

log = logging.getLogger(__name__)

CONSTRAINT_KINDS = ("p-root", "phat-root", "origin-equal")


@dataclass(frozen=True)
class Constraint:
    kind: str
    at: Fraction = Fraction(0)
    multiplicity: int = 1

    @classmethod
    def p_root(cls, at: RationalLike, multiplicity: int = 1) -> Constraint:
        return cls("p-root", parse_rational(at), multiplicity)

    @classmethod
    def phat_root(cls, at: RationalLike, multiplicity: int = 1) -> Constraint:
        return cls("phat-root", parse_rational(at), multiplicity)

    @classmethod
    def origin_equal(cls) -> Constraint:
        return cls("origin-equal")

    @classmethod
    def parse(cls, text: str) -> Constraint:
        """`phat-root:<u0>:<mult>`, `p-root:<u0>:<mult>` or `origin-equal`."""
        parts = text.strip().split(":")
        if parts == ["origin-equal"]:
            return cls.origin_equal()
        if len(parts) in (2, 3) and parts[0] in ("p-root", "phat-root"):
            try:
                mult = int(parts[2]) if len(parts) == 3 else 1
            except ValueError as exc:
                raise InputError(f"bad multiplicity in constraint {text!r}") from exc
            return cls(parts[0], parse_rational(parts[1]), mult)
        raise InputError(f"cannot parse constraint {text!r}")

    @classmethod
    def from_json(cls, data: dict) -> Constraint:
        if not isinstance(data, dict) or data.get("kind") not in CONSTRAINT_KINDS:
            raise InputError(f"bad constraint entry {data!r}")
        if data["kind"] == "origin-equal":
            return cls.origin_equal()
        mult = data.get("multiplicity", 1)
        if not isinstance(mult, int) or isinstance(mult, bool):
            raise InputError(f"multiplicity must be an integer, got {mult!r}")
        return cls(data["kind"], parse_rational(data.get("at", "0")), mult)

    @property
    def rows(self) -> int:
        return 1 if self.kind == "origin-equal" else self.multiplicity

    def __str__(self) -> str:
        if self.kind == "origin-equal":
            return "f(0) = f_hat(0)"
        target = "p" if self.kind == "p-root" else "p_hat"
        return f"{target} has a root of multiplicity >= {self.multiplicity} at u = {self.at}"

    def to_json(self) -> dict:
        if self.kind == "origin-equal":
            return {"kind": self.kind}
        return {"kind": self.kind, "at": format_rational(self.at), "multiplicity": self.multiplicity}


def _derivative_row(images: list[Polynomial], at: Fraction, order: int) -> list[Fraction]:
    return [poly_derivative(img, order).evaluate(at) for img in images]


def poly_derivative(p: Polynomial, order: int) -> Polynomial:
    for _ in range(order):
        p = p.derivative()
    return p


def constraint_rows(n: int, degree: int, constraints: Iterable[Constraint]) -> list[list[Fraction]]:
    """Linear functionals on the coefficient vector (c_0, ..., c_degree)."""
    monomials = [Polynomial.monomial(i) for i in range(degree + 1)]
    transforms = [fourier_transform_polynomial(m, n) for m in monomials]
    rows: list[list[Fraction]] = []
    for c in constraints:
        if c.kind not in CONSTRAINT_KINDS:
            raise InputError(f"unknown constraint kind {c.kind!r}")
        if c.kind == "origin-equal":
            rows.append([m.coefficient(0) - t.coefficient(0) for m, t in zip(monomials, transforms)])
            continue
        if c.multiplicity < 1:
            raise DegenerateConstraint(f"multiplicity must be >= 1: {c}")
        if c.multiplicity > degree:
            raise DegenerateConstraint(f"multiplicity {c.multiplicity} exceeds degree {degree}")
        if c.at < 0:
            raise DegenerateConstraint(f"u = 2*pi*|x|^2 is never negative: {c}")
        images = monomials if c.kind == "p-root" else transforms
        rows.extend(_derivative_row(images, c.at, j) for j in range(c.multiplicity))
    return rows


def normalize_profile(coeffs: list[Fraction]) -> Polynomial:
    """Primitive integer coefficients; sign chosen so p(0) > 0 (or, if p(0) = 0,
    the lowest nonzero coefficient is positive)."""
    p = Polynomial(coeffs).primitive()
    lowest = next(c for c in p.coeffs if c != 0)
    return -p if lowest < 0 else p


def construct_certificate(
    n: int,
    degree: int,
    constraints: Iterable[Constraint],
    sign_change_radius: Optional[RationalLike] = None,
) -> RadialCertificate:
    """Unique-up-to-scale profile of the given degree meeting every constraint."""
    dimension_alpha(n)
    if degree < 0:
        raise InputError(f"degree must be nonnegative, got {degree}")
    constraints = list(constraints)
    rows = constraint_rows(n, degree, constraints)
    basis = nullspace(rows, degree + 1)

    if not basis:
        raise Overdetermined(f"only p = 0 satisfies {len(rows)} constraint rows at degree {degree}")
    if len(basis) > 1:
        raise Underdetermined(f"{len(basis)} independent profiles satisfy the constraints")

    p = normalize_profile(basis[0])
    if p.degree != degree:
        log.info("constructed profile has degree %d < requested %d", p.degree, degree)
    radius = None if sign_change_radius is None else parse_rational(sign_change_radius)
    return RadialCertificate(n, p, radius)


def constraints_hold(cert: RadialCertificate, constraints: Iterable[Constraint]) -> list[tuple[Constraint, bool]]:
    """Replay each constraint exactly against a certificate."""
    out = []
    for c in constraints:
        if c.kind == "origin-equal":
            ok = cert.normalization == cert.transform_at_origin
        else:
            target = cert.p if c.kind == "p-root" else cert.p_hat
            ok = all(poly_derivative(target, j).evaluate(c.at) == 0 for j in range(c.multiplicity))
        out.append((c, ok))
    return out

