"""
Lattice packing density: vol(B_r) / covolume with r = sqrt(M) / 2.

In the plane this is (pi/4) * M / sqrt(D).
"""

from __future__ import annotations

from fractions import Fraction

from ..interval.elementary import enclose_ball_volume, enclose_pi
from ..interval.interval import Interval, bits_for
from .enumerate import minimal_norm
from .gram import GramMatrix, working_bits


def density_from_invariants(n: int, m: Interval, det: Interval, target_width: Fraction) -> Interval:
    bits = working_bits()
    if n == 2:
        pi = enclose_pi(target_width / 16)
        return (pi / 4 * m / det.sqrt(bits)).simplify(bits_for(target_width))
    radius = m.sqrt(bits) / 2
    return (enclose_ball_volume(n, radius, target_width / 4) / det.sqrt(bits)).simplify(bits_for(target_width))


def lattice_density(gram: GramMatrix, target_width: Fraction = Fraction(1, 10**12)) -> Interval:
    m = minimal_norm(gram)
    det = gram.determinant()
    return density_from_invariants(gram.dimension, m, det, target_width)
