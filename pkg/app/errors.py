"""
Exception hierarchy shared by every module.

Each error names the failure the caller has to react to; the CLI maps
them onto exit codes (see app/cli.py).
"""

from __future__ import annotations

from fractions import Fraction


class HexcertError(Exception):
    """Base class for all certification errors."""


# ---------------------------------------------------------------------------
# Input / usage
# ---------------------------------------------------------------------------

class InputError(HexcertError, ValueError):
    """Malformed file, flag, or literal."""


class PreconditionFailed(HexcertError, ValueError):
    """An operation was called outside its documented precondition."""


class InvalidDimension(HexcertError, ValueError):
    pass


# ---------------------------------------------------------------------------
# Exact polynomial algebra
# ---------------------------------------------------------------------------

class ZeroPolynomial(HexcertError, ValueError):
    pass


class ClaimFalse(HexcertError):
    """A sign claim fails on its region.

    `witness` is a rational point where the claim fails, when one exists.
    `witness_interval` isolates an irrational root that breaks a strict claim.
    """

    def __init__(
        self,
        message: str,
        witness: Fraction | None = None,
        witness_interval: tuple[Fraction, Fraction] | None = None,
    ):
        super().__init__(message)
        self.witness = witness
        self.witness_interval = witness_interval


# ---------------------------------------------------------------------------
# Interval arithmetic
# ---------------------------------------------------------------------------

class DivisionByIntervalContainingZero(HexcertError, ZeroDivisionError):
    pass


class SqrtOfNegative(HexcertError, ValueError):
    pass


class PrecisionUnreachable(HexcertError):
    pass


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

class Overdetermined(HexcertError):
    """Constraints admit only the zero polynomial."""


class Underdetermined(HexcertError):
    """Constraints leave two or more free directions."""


class DegenerateConstraint(HexcertError, ValueError):
    pass


class UnverifiedCertificate(HexcertError):
    pass


# ---------------------------------------------------------------------------
# Lattices
# ---------------------------------------------------------------------------

class SingularBasis(HexcertError, ValueError):
    pass


class NotPositiveDefinite(HexcertError, ValueError):
    pass


class BoundTooLargeForBudget(HexcertError):
    pass


# ---------------------------------------------------------------------------
# Poisson checks and proof steps
# ---------------------------------------------------------------------------

class TailBoundDiverges(HexcertError):
    pass


class StepFalsified(HexcertError):
    """A proof step failed; `claim` names the failing sub-claim, `record` is the step record."""

    def __init__(self, message: str, claim: str | None = None, record=None):
        super().__init__(message)
        self.claim = claim
        self.record = record


class Inconclusive(HexcertError):
    """Precision cap reached before a comparison was decided."""

    def __init__(self, message: str, claim: str | None = None, record=None):
        super().__init__(message)
        self.claim = claim
        self.record = record
