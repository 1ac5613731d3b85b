"""
Numerical Hankel-transform oracle (floating point, not rigorous).

Test helper: cross-checks the exact Laguerre route. For a radial f on R^n,

    f_hat(t) = 2*pi*|t|^(1-n/2) * int_0^inf f(r) J_{n/2-1}(2*pi*r*|t|) r^(n/2) dr,

and f_hat(0) = |S^(n-1)| * int_0^inf f(r) r^(n-1) dr.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import quad
from scipy.special import gamma, jv

from app.exact.polynomial import Polynomial

R_MAX = 12.0


def _profile(p: Polynomial):
    coeffs = np.array([float(c) for c in p.coeffs], dtype=np.float64)

    def f(r: float) -> float:
        u = 2 * np.pi * r * r
        return float(np.polynomial.polynomial.polyval(u, coeffs) * np.exp(-np.pi * r * r))

    return f


def numerical_transform(p: Polynomial, n: int, t: float) -> tuple[float, float]:
    """(value, absolute error estimate) of the transform of p(2*pi*|x|^2)e^(-pi*|x|^2) at |t|."""
    f = _profile(p)
    if t == 0:
        sphere = 2 * np.pi ** (n / 2) / gamma(n / 2)
        value, err = quad(lambda r: f(r) * r ** (n - 1), 0, R_MAX, limit=200)
        return float(sphere * value), float(sphere * err)
    nu = n / 2 - 1
    value, err = quad(lambda r: f(r) * jv(nu, 2 * np.pi * r * t) * r ** (n / 2), 0, R_MAX, limit=400)
    scale = 2 * np.pi * t ** (1 - n / 2)
    return float(scale * value), float(scale * err)


def numerical_profile(p: Polynomial, t: float) -> float:
    """p(2*pi*t^2) e^(-pi*t^2) in floating point."""
    return _profile(p)(t)
