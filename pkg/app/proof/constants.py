"""
Decimal thresholds and reference profiles of the planar proof.

Every decimal is an exact Fraction; nothing here is a float.
"""

from __future__ import annotations

from fractions import Fraction

from ..exact.polynomial import Polynomial
from ..fourier.construct import Constraint

# Radii (lengths in the covolume-1 normalization)
F_RADIUS = Fraction("1.084")  # f < 0 beyond this
NEAR = Fraction("1.114")  # nearly minimal: length in [(4/3)^(1/4), NEAR)
GAP_END = Fraction("1.62")  # no vector length in [NEAR, GAP_END]
G_RADIUS = GAP_END  # g <= 0 beyond this
SHORT_WINDOW = (Fraction("1.074"), Fraction("1.075"))  # brackets (4/3)^(1/4)

# Angles and inner products
COS_BOUND = Fraction("0.575")
ARC = Fraction("0.152")  # angle lower bound, in turns
DIFF_BOUND = Fraction("1.33")  # |x - y|^2 bound
RESCALED_NORM_END = Fraction("2.16")
RESCALED_LENGTH_END = Fraction("1.467")
INNER_END = Fraction("1.243")
ENTRY_BOUND = Fraction("0.243")

# Counting and local optimality
COUNT_QUOTIENT = Fraction("5.89")
RHO_MAX = Fraction(12, 47)
RHO_CRITICAL = Fraction(24, 35)

# Degree-3 profiles in dimension 2 (coefficients of u^0 .. u^3)
P_F = Polynomial([20812, 756, 1107, -216])
P_G = Polynomial([13975, 1785, 677, -69])

F_CONSTRAINTS = (Constraint.phat_root(Fraction(22, 3), 2), Constraint.origin_equal())
G_CONSTRAINTS = (Constraint.phat_root(7, 2), Constraint.p_root(13, 1))

HEXAGONAL_GRAM = ((Fraction(2), Fraction(1)), (Fraction(1), Fraction(2)))
