"""
Report payloads for every CLI subcommand.

Rationals are "num/den" strings and intervals ["lo", "hi"] pairs. Field
order is declaration order, so model_dump_json output is byte-stable.
"""

from __future__ import annotations

from typing import Any, Optional, Union

from pydantic import BaseModel

RationalStr = str
IntervalPair = list[str]
Entry = Union[RationalStr, IntervalPair]


# ---------------------------------------------------------------------------
# Proof reports
# ---------------------------------------------------------------------------

class ClaimOut(BaseModel):
    claim: str
    kind: str
    verdict: str
    relation: Optional[str] = None
    lhs: Optional[Entry] = None
    rhs: Optional[Entry] = None
    detail: Optional[dict[str, Any]] = None


class StepOut(BaseModel):
    step: str
    lemma: str
    inputs: dict[str, Any] = {}
    verdict: str
    claims: list[ClaimOut] = []
    notes: list[str] = []


class ProveHexagonalOut(BaseModel):
    command: str = "prove-hexagonal"
    theorem: str
    verdict: str
    setup: dict[str, Any]
    steps: list[StepOut]


class VerifyCertOut(BaseModel):
    command: str = "verify-cert"
    verdict: str
    certificate: dict[str, Any]
    p_hat: list[RationalStr]
    step: StepOut
    failing_claim: Optional[str] = None


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

class ConstraintOut(BaseModel):
    kind: str
    at: Optional[RationalStr] = None
    multiplicity: Optional[int] = None


class ConstructCertOut(BaseModel):
    command: str = "construct-cert"
    verdict: str
    certificate: dict[str, Any]
    p_hat: list[RationalStr]
    constraints: list[ConstraintOut]
    constraints_hold: list[bool]
    suggested_radius: Optional[RationalStr] = None


class SignCertificateOut(BaseModel):
    polynomial: list[RationalStr]
    region: dict[str, str]
    claim: str
    root_count: int
    samples: list[list[RationalStr]]


class LPConditionsOut(BaseModel):
    negativity: SignCertificateOut
    positivity: SignCertificateOut
    transform_at_origin: str


class LPBoundOut(BaseModel):
    command: str = "lp-bound"
    verdict: str
    certificate: dict[str, Any]
    bound: Optional[IntervalPair] = None
    conditions: Optional[LPConditionsOut] = None
    error: Optional[str] = None


# ---------------------------------------------------------------------------
# Lattices
# ---------------------------------------------------------------------------

class ShortVectorOut(BaseModel):
    coords: list[int]
    status: str
    norm: Entry


class EmpiricalOut(BaseModel):
    minimal_length: IntervalPair
    nearly_minimal: int
    gap_vectors: int
    uncertain: int


class LatticeInfoOut(BaseModel):
    command: str = "lattice-info"
    verdict: str
    dimension: int
    gram: list[list[Entry]]
    determinant: IntervalPair
    covolume: IntervalPair
    minimal_norm: IntervalPair
    kissing_number: int
    shortest_vectors: list[ShortVectorOut]
    density: IntervalPair
    covolume_one: EmpiricalOut


class PoissonCheckOut(BaseModel):
    command: str = "poisson-check"
    verdict: str
    lattice_id: str
    certificate_id: str
    radius: RationalStr
    lhs_truncated: IntervalPair
    rhs_truncated: IntervalPair
    lhs_tail_bound: RationalStr
    rhs_tail_bound: RationalStr
    covolume: IntervalPair
    gap: IntervalPair
    tolerance: RationalStr
    lhs_terms: int
    rhs_terms: int


class ErrorOut(BaseModel):
    command: str
    verdict: str = "error"
    error_type: str
    message: str


SCHEMAS: dict[str, type[BaseModel]] = {
    "prove-hexagonal": ProveHexagonalOut,
    "verify-cert": VerifyCertOut,
    "construct-cert": ConstructCertOut,
    "lattice-info": LatticeInfoOut,
    "poisson-check": PoissonCheckOut,
    "lp-bound": LPBoundOut,
    "error": ErrorOut,
}
