"""
Sign conditions of a radial certificate, as a proof step.

Sub-claims, in order:
  (0) the construction constraints still hold (exact replay)
  (i) f(0) = f_hat(0)                     p(0) = p_hat(0) exactly
  (ii) f < 0 for |x| >= r                 p < 0 on [u0, inf), u0 <= 2*pi*r^2
  (iii) f_hat >= 0 everywhere             p_hat >= 0 on [0, inf)
  (iv) f decreasing in |x| on a window    p' - p/2 <= 0 on the covering u-window
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Iterable, Optional, Union

from ..errors import PreconditionFailed
from ..exact.rational import label_rational
from ..exact.sturm import Region
from ..fourier.certificate import RadialCertificate
from ..fourier.construct import Constraint, poly_derivative
from ..fourier.lp_bound import negativity_threshold
from ..interval.elementary import enclose_pi
from ..interval.interval import Interval
from .report import StepRecord, exact_claim, sign_claim

log = logging.getLogger(__name__)

RadiusBound = Union[Interval, Fraction, int]

PI_WIDTH = Fraction(1, 10**15)


def _as_interval(r: RadiusBound) -> Interval:
    return r if isinstance(r, Interval) else Interval.point(r)


def u_window(lo: RadiusBound, hi: RadiusBound) -> Region:
    """Closed u-region covering u = 2*pi*r^2 for every r between the two radius bounds."""
    pi = enclose_pi(PI_WIDTH)
    a, b = _as_interval(lo), _as_interval(hi)
    if a.lo < 0 or a.lo > b.hi:
        raise PreconditionFailed(f"bad radius window [{a}, {b}]")
    return Region.closed(2 * pi.lo * a.lo * a.lo, 2 * pi.hi * b.hi * b.hi)


def profile_derivative(cert: RadialCertificate):
    """q = p' - p/2: the sign of d/du [p(u) e^(-u/2)]."""
    return cert.p.derivative() - cert.p.scale(Fraction(1, 2))


def verify_sign_conditions(
    cert: RadialCertificate,
    monotone_window: Optional[tuple[RadiusBound, RadiusBound]] = None,
    constraints: Iterable[Constraint] = (),
    require_equal_origin: bool = True,
    name: str = "verify_sign_conditions",
    label: str = "f",
) -> StepRecord:
    """Certify the sign conditions of `cert`; raises StepFalsified on the first failing sub-claim."""
    if cert.sign_change_radius is None:
        raise PreconditionFailed("certificate has no sign-change radius")
    r = cert.sign_change_radius
    record = StepRecord(
        name=name,
        lemma=(
            f"{label}(0) = {label}_hat(0), {label}(x) < 0 for |x| >= {label_rational(r)}, "
            f"{label}_hat >= 0, and {label} decreases on the stated window"
        ),
        inputs={"certificate": cert.to_json(), "p_hat": cert.p_hat.to_json()},
    )

    for c in constraints:
        if c.kind == "origin-equal":
            continue
        target = cert.p if c.kind == "p-root" else cert.p_hat
        for j in range(c.multiplicity):
            deriv = poly_derivative(target, j)
            record.add(
                exact_claim(
                    f"(0) {c.kind} order {j} at u = {label_rational(c.at)}",
                    lambda d=deriv, at=c.at: (d.evaluate(at), Fraction(0)),
                    "=",
                )
            )

    if require_equal_origin:
        record.add(exact_claim(f"(i) {label}(0) = {label}_hat(0)", lambda: (cert.p.evaluate(0), cert.p_hat.evaluate(0)), "="))
    else:
        record.add(exact_claim(f"(i) {label}_hat(0) > 0", lambda: (cert.p_hat.evaluate(0), Fraction(0)), ">"))

    u0 = negativity_threshold(r)
    record.add(sign_claim(f"(ii) {label} < 0 beyond r = {label_rational(r)}", cert.p, Region.ray(u0), "<0"))
    record.add(sign_claim(f"(iii) {label}_hat >= 0", cert.p_hat, Region.ray(0), ">=0"))

    if monotone_window is not None:
        region = u_window(*monotone_window)
        record.inputs["monotone_window"] = region.to_json()
        record.add(sign_claim(f"(iv) {label} decreasing", profile_derivative(cert), region, "<=0"))

    log.info("%s: %s (%d claims)", name, record.verdict, len(record.claims))
    return record.finish()
