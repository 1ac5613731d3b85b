"""
Radial certificates f(x) = p(2*pi*|x|^2) e^(-pi*|x|^2) and their rigorous evaluation.

The transform profile p_hat is always recomputed from p; it is never read
from a file.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from ..errors import InputError, PreconditionFailed
from ..exact.polynomial import Polynomial
from ..exact.rational import RationalLike, format_rational, parse_rational
from ..exact.sturm import Region, isolate_real_roots, refine_bracket
from ..interval.elementary import enclose_exp, enclose_pi
from ..interval.interval import Interval, bits_for, eval_polynomial
from .laguerre import dimension_alpha, fourier_transform_polynomial

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RadialCertificate:
    dimension: int
    p: Polynomial
    sign_change_radius: Optional[Fraction] = None
    p_hat: Polynomial = field(init=False, compare=False)

    def __post_init__(self) -> None:
        dimension_alpha(self.dimension)
        if self.p.is_zero:
            raise InputError("certificate profile must be a nonzero polynomial")
        if self.sign_change_radius is not None and self.sign_change_radius <= 0:
            raise InputError(f"sign-change radius must be positive, got {self.sign_change_radius}")
        object.__setattr__(self, "p_hat", fourier_transform_polynomial(self.p, self.dimension))

    @property
    def normalization(self) -> Fraction:
        """f(0) = p(0), since u = 2*pi*|x|^2 vanishes at the origin."""
        return self.p.coefficient(0)

    @property
    def transform_at_origin(self) -> Fraction:
        return self.p_hat.coefficient(0)

    def profile(self, which: str) -> Polynomial:
        if which == "f":
            return self.p
        if which == "f_hat":
            return self.p_hat
        raise InputError(f"which must be 'f' or 'f_hat', got {which!r}")

    # -----------------------------------------------------------------------
    # Variants
    # -----------------------------------------------------------------------

    def scaled(self, c: RationalLike) -> RadialCertificate:
        return RadialCertificate(self.dimension, self.p.scale(c), self.sign_change_radius)

    def normalized(self) -> RadialCertificate:
        """Scale so that f(0) = 1."""
        if self.normalization == 0:
            raise PreconditionFailed("f(0) = 0 cannot be normalized")
        return self.scaled(1 / self.normalization)

    def with_coefficient(self, index: int, delta: RationalLike) -> RadialCertificate:
        """Copy with p's coefficient of u^index shifted by delta."""
        coeffs = list(self.p.coeffs) + [Fraction(0)] * max(0, index + 1 - len(self.p.coeffs))
        coeffs[index] += parse_rational(delta)
        return RadialCertificate(self.dimension, Polynomial(coeffs), self.sign_change_radius)

    def with_radius(self, radius: Optional[RationalLike]) -> RadialCertificate:
        r = None if radius is None else parse_rational(radius)
        return RadialCertificate(self.dimension, self.p, r)

    # -----------------------------------------------------------------------
    # JSON
    # -----------------------------------------------------------------------

    @classmethod
    def from_json(cls, data: dict) -> RadialCertificate:
        if not isinstance(data, dict) or "dimension" not in data or "p" not in data:
            raise InputError("certificate JSON needs 'dimension' and 'p'")
        dim = data["dimension"]
        if not isinstance(dim, int) or isinstance(dim, bool):
            raise InputError(f"dimension must be an integer, got {dim!r}")
        radius = data.get("sign_change_radius")
        return cls(dim, Polynomial.from_json(data["p"]), None if radius is None else parse_rational(radius))

    @classmethod
    def load(cls, path: str | Path) -> RadialCertificate:
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read certificate {path}: {exc}") from exc
        return cls.from_json(data)

    def to_json(self) -> dict:
        out: dict = {"dimension": self.dimension, "p": self.p.to_json()}
        if self.sign_change_radius is not None:
            out["sign_change_radius"] = format_rational(self.sign_change_radius)
        return out


# ---------------------------------------------------------------------------
# Rigorous evaluation
# ---------------------------------------------------------------------------

def radius_to_u(radius: Interval, target_width: Fraction) -> Interval:
    """u = 2*pi*r^2 over the radius interval."""
    if radius.lo < 0:
        raise PreconditionFailed(f"radius must be nonnegative, got {radius}")
    if radius.hi == 0:
        return Interval.point(0)
    pi = enclose_pi(target_width / (8 * (1 + radius.hi) ** 2))
    return pi * 2 * radius**2


def enclose_profile(p: Polynomial, u: Interval, target_width: Fraction) -> Interval:
    """Enclosure of p(u) e^(-u/2) over u >= 0."""
    if u.lo < 0:
        raise PreconditionFailed(f"profile argument must be nonnegative, got {u}")
    values = eval_polynomial(p, u)
    if u.hi == 0:
        return values
    weight = enclose_exp(-u / 2, target_width / (4 * (1 + values.mag)))
    return (values * weight).simplify(bits_for(target_width))


def eval_radial(
    cert: RadialCertificate,
    radius: Interval | RationalLike,
    which: str = "f",
    target_width: RationalLike = Fraction(1, 10**12),
) -> Interval:
    """Enclosure of p(2*pi*r^2) e^(-pi*r^2) over all r in `radius`."""
    if not isinstance(radius, Interval):
        radius = Interval.point(radius)
    target_width = parse_rational(target_width)
    p = cert.profile(which)
    u = radius_to_u(radius, target_width)
    return enclose_profile(p, u, target_width)


# ---------------------------------------------------------------------------
# Sign-change radius suggestion
# ---------------------------------------------------------------------------

def suggest_sign_change_radius(p: Polynomial, places: int = 3) -> Optional[Fraction]:
    """Smallest decimal with `places` digits that is >= the radius of p's largest positive root.

    None when p has no positive root.
    """
    brackets = isolate_real_roots(p, Region.ray(0))
    positive = [b for b in brackets if b.hi > 0]
    if not positive:
        return None
    scale = 10**places
    width = Fraction(1, 10**6)
    for _ in range(8):
        root = refine_bracket(p, positive[-1], width)
        pi = enclose_pi(width)
        lo = (Interval.point(root.lo) / (pi * 2)).sqrt(bits_for(width))
        hi = (Interval.point(root.hi) / (pi * 2)).sqrt(bits_for(width))
        up_lo = -((-lo.lo * scale) // 1)
        up_hi = -((-hi.hi * scale) // 1)
        if up_lo == up_hi:
            return Fraction(up_hi, scale)
        width /= 1024
    log.warning("sign-change radius sits on a decimal boundary; returning the safe upper choice")
    return Fraction(up_hi, scale)
