"""
Gaussian Fourier Transform — Laguerre eigenbasis

For alpha = n/2 - 1 the radial functions x -> L_k^alpha(2*pi*|x|^2) e^(-pi*|x|^2)
on R^n are Fourier eigenfunctions with eigenvalue (-1)^k (transform kernel
e^(2*pi*i<x,t>)). Expanding a profile polynomial in this basis therefore gives
its transform exactly: flip the sign of the odd-k coefficients and expand back.

Pure math. All coefficients are exact Fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..config import settings
from ..errors import InvalidDimension
from ..exact.polynomial import Polynomial


@lru_cache(maxsize=512)
def laguerre_polynomial(k: int, alpha: Fraction) -> Polynomial:
    """L_k^alpha(u) = sum_i (-1)^i binom(k + alpha, k - i) u^i / i!"""
    coeffs = []
    for i in range(k + 1):
        rising = Fraction(1)
        for j in range(i + 1, k + 1):
            rising *= alpha + j
        binom = rising / math.factorial(k - i)
        coeffs.append((-1) ** i * binom / math.factorial(i))
    return Polynomial(coeffs)


@dataclass(frozen=True)
class LaguerreBasis:
    alpha: Fraction
    elements: tuple[Polynomial, ...]

    @property
    def degree(self) -> int:
        return len(self.elements) - 1


def laguerre_basis(alpha: Fraction, degree: int) -> LaguerreBasis:
    alpha = Fraction(alpha)
    return LaguerreBasis(alpha, tuple(laguerre_polynomial(k, alpha) for k in range(degree + 1)))


def laguerre_coefficients(p: Polynomial, alpha: Fraction) -> list[Fraction]:
    """c with p = sum_k c[k] L_k^alpha; back-substitution from the top degree."""
    alpha = Fraction(alpha)
    coeffs = [Fraction(0)] * (p.degree + 1)
    rest = p
    for k in range(p.degree, -1, -1):
        lk = laguerre_polynomial(k, alpha)
        c = rest.coefficient(k) / lk.leading
        coeffs[k] = c
        if c:
            rest = rest - lk.scale(c)
    return coeffs


def dimension_alpha(n: int) -> Fraction:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidDimension(f"dimension must be a positive integer, got {n!r}")
    if n > settings.max_dimension:
        raise InvalidDimension(f"dimension {n} exceeds the supported cap {settings.max_dimension}")
    return Fraction(n, 2) - 1


def fourier_transform_polynomial(p: Polynomial, n: int) -> Polynomial:
    """Profile p_hat of the transform of x -> p(2*pi*|x|^2) e^(-pi*|x|^2) on R^n."""
    alpha = dimension_alpha(n)
    if p.is_zero:
        return p
    out = Polynomial()
    for k, c in enumerate(laguerre_coefficients(p, alpha)):
        if c:
            out = out + laguerre_polynomial(k, alpha).scale(c if k % 2 == 0 else -c)
    return out
