"""
LP Density Bound — sign conditions and the resulting packing bound

A radial certificate with f(x) <= 0 for |x| >= r, f_hat >= 0 everywhere and
f_hat(0) > 0 bounds the density of every sphere packing in R^n by

    vol(B_{r/2}) * f(0) / f_hat(0).

The sign conditions are certified exactly on the profiles: f <= 0 beyond r
becomes p <= 0 on [u0, inf) for a rational u0 <= 2*pi*r^2, and f_hat >= 0
becomes p_hat >= 0 on [0, inf).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..errors import ClaimFalse, UnverifiedCertificate, ZeroPolynomial
from ..exact.sturm import Region, SignCertificate, certify_sign_on_region
from ..interval.elementary import enclose_ball_volume, enclose_pi
from ..interval.interval import Interval
from .certificate import RadialCertificate

log = logging.getLogger(__name__)


def negativity_threshold(radius: Fraction, target_width: Fraction = Fraction(1, 10**15)) -> Fraction:
    """Rational u0 <= 2*pi*r^2, so [u0, inf) covers every |x| >= r."""
    return 2 * enclose_pi(target_width).lo * radius * radius


@dataclass(frozen=True)
class LPConditions:
    negativity: SignCertificate
    positivity: SignCertificate
    transform_at_origin: Fraction

    def matches(self, cert: RadialCertificate) -> bool:
        """Conditions were issued for this certificate and still replay."""
        if cert.sign_change_radius is None:
            return False
        return (
            self.negativity.polynomial == cert.p
            and self.positivity.polynomial == cert.p_hat
            and self.negativity.region.lo <= negativity_threshold(cert.sign_change_radius)
            and self.positivity.region.lo <= 0
            and self.negativity.claim in ("<=0", "<0")
            and self.positivity.claim in (">=0", ">0")
            and self.transform_at_origin == cert.transform_at_origin > 0
            and self.negativity.recheck()
            and self.positivity.recheck()
        )

    def to_json(self) -> dict:
        return {
            "negativity": self.negativity.to_json(),
            "positivity": self.positivity.to_json(),
            "transform_at_origin": str(self.transform_at_origin),
        }


def verify_lp_conditions(cert: RadialCertificate) -> LPConditions:
    """Certify the three LP sign conditions or raise UnverifiedCertificate."""
    if cert.sign_change_radius is None:
        raise UnverifiedCertificate("certificate has no sign-change radius")
    u0 = negativity_threshold(cert.sign_change_radius)
    try:
        negativity = certify_sign_on_region(cert.p, Region.ray(u0), "<=0")
        positivity = certify_sign_on_region(cert.p_hat, Region.ray(0), ">=0")
    except (ClaimFalse, ZeroPolynomial) as exc:
        raise UnverifiedCertificate(f"sign condition fails: {exc}") from exc
    if cert.transform_at_origin <= 0:
        raise UnverifiedCertificate(f"f_hat(0) = {cert.transform_at_origin} is not positive")
    return LPConditions(negativity, positivity, cert.transform_at_origin)


def lp_density_bound(
    cert: RadialCertificate,
    conditions: Optional[LPConditions] = None,
    target_width: Fraction = Fraction(1, 10**12),
) -> Interval:
    """Enclosure of vol(B_{r/2}) * f(0) / f_hat(0)."""
    if conditions is None:
        conditions = verify_lp_conditions(cert)
    elif not conditions.matches(cert):
        raise UnverifiedCertificate("supplied sign conditions do not belong to this certificate")
    half = Interval.point(cert.sign_change_radius / 2)
    volume = enclose_ball_volume(cert.dimension, half, target_width / 4)
    ratio = cert.normalization / cert.transform_at_origin
    bound = volume * ratio
    log.debug("LP bound for n=%d r=%s: %s", cert.dimension, cert.sign_change_radius, bound)
    return bound
