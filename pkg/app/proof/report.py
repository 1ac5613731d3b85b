"""
Proof Report — step records built from replayable claims

A claim is one number the argument asks the reader to check: an exact
rational relation, an interval comparison, a polynomial sign condition, or
a logical step whose premises are other claims. Each claim keeps the
enclosures it was decided on plus a thunk that recomputes its verdict from
scratch, so a finished report can be re-checked independently.

Verdicts:
  step   verified iff every claim is verified; falsified beats inconclusive
  report proved iff every step is verified
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Optional, Union

from ..errors import ClaimFalse, Inconclusive, StepFalsified, ZeroPolynomial
from ..exact.polynomial import Polynomial
from ..exact.rational import format_rational
from ..exact.sturm import Region, certify_sign_on_region
from ..interval.compare import FALSIFIED, INCONCLUSIVE, VERIFIED, certify_less
from ..interval.interval import Interval

log = logging.getLogger(__name__)

EXACT = "exact"
ENCLOSURE = "enclosure"
SIGN = "sign"
LOGIC = "logic"

PROVED = "proved"

Value = Union[Interval, Fraction, int]
Thunk = Callable[[Fraction], Interval]


def _value_json(value: Optional[Value]) -> Any:
    if value is None:
        return None
    if isinstance(value, Interval):
        return value.to_json()
    return format_rational(Fraction(value))


def _value_text(value: Optional[Value]) -> str:
    if value is None:
        return "-"
    if isinstance(value, Interval):
        return str(value)
    return format_rational(Fraction(value))


# ---------------------------------------------------------------------------
# Claims
# ---------------------------------------------------------------------------

@dataclass
class Claim:
    label: str
    kind: str
    verdict: str
    relation: str = ""
    lhs: Optional[Value] = None
    rhs: Optional[Value] = None
    detail: dict = field(default_factory=dict)
    fresh: Optional[Callable[[], str]] = field(default=None, repr=False, compare=False)

    @property
    def verified(self) -> bool:
        return self.verdict == VERIFIED

    def replay(self) -> str:
        """Recompute the verdict from scratch."""
        return self.verdict if self.fresh is None else self.fresh()

    def to_json(self) -> dict:
        out = {
            "claim": self.label,
            "kind": self.kind,
            "verdict": self.verdict,
        }
        if self.relation:
            out["relation"] = self.relation
            out["lhs"] = _value_json(self.lhs)
            out["rhs"] = _value_json(self.rhs)
        if self.detail:
            out["detail"] = self.detail
        return out

    def to_text(self) -> str:
        if self.relation:
            body = f"{_value_text(self.lhs)} {self.relation} {_value_text(self.rhs)}"
        else:
            body = self.detail.get("text", "")
        return f"{self.label}: {body}  [{self.verdict}]"


_RELATIONS: dict[str, Callable[[Fraction, Fraction], bool]] = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    "=": lambda a, b: a == b,
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
}


def exact_claim(label: str, compute: Callable[[], tuple[Fraction, Fraction]], relation: str) -> Claim:
    """lhs `relation` rhs between exact rationals, zero tolerance."""
    test = _RELATIONS[relation]

    def decide() -> tuple[str, Fraction, Fraction]:
        a, b = compute()
        return (VERIFIED if test(Fraction(a), Fraction(b)) else FALSIFIED), Fraction(a), Fraction(b)

    verdict, a, b = decide()
    return Claim(label, EXACT, verdict, relation, a, b, fresh=lambda: decide()[0])


def identity_claim(label: str, compute: Callable[[], tuple[Polynomial, Polynomial]]) -> Claim:
    """Two polynomials agree coefficient for coefficient."""

    def decide() -> tuple[str, dict]:
        left, right = compute()
        detail = {"lhs": left.to_json(), "rhs": right.to_json()}
        return (VERIFIED if left == right else FALSIFIED), detail

    verdict, detail = decide()
    return Claim(label, EXACT, verdict, detail=detail, fresh=lambda: decide()[0])


def enclosure_claim(
    label: str,
    lhs: Union[Thunk, Value],
    relation: str,
    rhs: Union[Thunk, Value],
) -> Claim:
    """lhs < rhs or lhs > rhs decided from enclosures, refining on overlap."""
    if relation not in ("<", ">"):
        raise ValueError(f"enclosure claims are strict, got {relation!r}")

    def decide():
        if relation == "<":
            cmp = certify_less(lhs, rhs, label)
            return cmp, cmp.lhs, cmp.rhs
        cmp = certify_less(rhs, lhs, label)
        return cmp, cmp.rhs, cmp.lhs

    cmp, a, b = decide()
    detail = {"target_width": format_rational(cmp.target_width)}
    return Claim(label, ENCLOSURE, cmp.verdict, relation, a, b, detail, fresh=lambda: decide()[0].verdict)


def contains_claim(label: str, enclosure: Thunk, point: Fraction, width: Fraction) -> Claim:
    """An enclosure of an exactly known quantity contains it."""

    def decide() -> tuple[str, Interval]:
        value = enclosure(width)
        return (VERIFIED if value.contains(point) else FALSIFIED), value

    verdict, value = decide()
    return Claim(label, ENCLOSURE, verdict, "contains", value, point, fresh=lambda: decide()[0])


def sign_claim(label: str, p: Polynomial, region: Region, claim: str) -> Claim:
    """Sturm-certified sign of p on region; a failure keeps its witness."""

    def decide() -> tuple[str, dict]:
        try:
            cert = certify_sign_on_region(p, region, claim)
        except (ClaimFalse, ZeroPolynomial) as exc:
            detail = {"polynomial": p.to_json(), "region": region.to_json(), "error": str(exc)}
            witness = getattr(exc, "witness", None)
            if witness is not None:
                detail["witness"] = format_rational(witness)
            bracket = getattr(exc, "witness_interval", None)
            if bracket is not None:
                detail["witness_interval"] = [format_rational(x) for x in bracket]
            return FALSIFIED, detail
        return (VERIFIED if cert.recheck() else FALSIFIED), cert.to_json()

    verdict, detail = decide()
    return Claim(f"{label}: p {claim} on {region}", SIGN, verdict, detail=detail, fresh=lambda: decide()[0])


def logic_claim(label: str, text: str, premises: Iterable[Claim]) -> Claim:
    """A deduction recorded as text; it holds when every premise does."""
    premises = list(premises)

    def decide(replay: bool) -> str:
        verdicts = [c.replay() if replay else c.verdict for c in premises]
        if all(v == VERIFIED for v in verdicts):
            return VERIFIED
        return FALSIFIED if FALSIFIED in verdicts else INCONCLUSIVE

    detail = {"text": text, "premises": [c.label for c in premises]}
    return Claim(label, LOGIC, decide(False), detail=detail, fresh=lambda: decide(True))


# ---------------------------------------------------------------------------
# Step records
# ---------------------------------------------------------------------------

@dataclass
class StepRecord:
    name: str
    lemma: str
    inputs: dict = field(default_factory=dict)
    claims: list[Claim] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, claim: Claim) -> Claim:
        self.claims.append(claim)
        log.debug("%s: %s -> %s", self.name, claim.label, claim.verdict)
        return claim

    def note(self, text: str) -> None:
        self.notes.append(text)

    @property
    def verdict(self) -> str:
        verdicts = [c.verdict for c in self.claims]
        if FALSIFIED in verdicts:
            return FALSIFIED
        if INCONCLUSIVE in verdicts:
            return INCONCLUSIVE
        return VERIFIED

    def failing(self) -> Optional[Claim]:
        for c in self.claims:
            if c.verdict != VERIFIED:
                return c
        return None

    def claim(self, label_prefix: str) -> Claim:
        for c in self.claims:
            if c.label.startswith(label_prefix):
                return c
        raise KeyError(label_prefix)

    def finish(self) -> StepRecord:
        """Return self when verified; otherwise raise with this record attached."""
        bad = self.failing()
        if bad is None:
            return self
        if bad.verdict == FALSIFIED:
            raise StepFalsified(f"{self.name}: {bad.label} is false", claim=bad.label, record=self)
        raise Inconclusive(f"{self.name}: {bad.label} undecided at the precision cap", claim=bad.label, record=self)

    def recheck(self) -> bool:
        return all(c.replay() == c.verdict for c in self.claims)

    def to_json(self) -> dict:
        return {
            "step": self.name,
            "lemma": self.lemma,
            "inputs": self.inputs,
            "verdict": self.verdict,
            "claims": [c.to_json() for c in self.claims],
            "notes": list(self.notes),
        }

    def to_text(self) -> str:
        lines = [f"{self.name} [{self.verdict}]", f"  {self.lemma}"]
        lines += [f"    - {c.to_text()}" for c in self.claims]
        lines += [f"    * {n}" for n in self.notes]
        return "\n".join(lines)


@dataclass
class ProofReport:
    steps: list[StepRecord] = field(default_factory=list)
    setup: dict = field(default_factory=dict)
    expected_steps: int = 0

    @property
    def verdict(self) -> str:
        verdicts = [s.verdict for s in self.steps]
        if FALSIFIED in verdicts:
            return FALSIFIED
        if INCONCLUSIVE in verdicts or len(self.steps) < self.expected_steps:
            return INCONCLUSIVE
        return PROVED

    def step(self, name: str) -> StepRecord:
        for s in self.steps:
            if s.name == name:
                return s
        raise KeyError(name)

    def recheck(self) -> bool:
        """Replay every claim with fresh computation; True iff all verdicts agree."""
        return all(s.recheck() for s in self.steps)

    def to_json(self) -> dict:
        return {
            "theorem": "the hexagonal lattice is the unique densest lattice in the plane",
            "verdict": self.verdict,
            "setup": self.setup,
            "steps": [s.to_json() for s in self.steps],
        }

    def to_text(self) -> str:
        head = f"hexagonal optimality: {self.verdict.upper()} ({len(self.steps)} steps)"
        body = [f"[{i}] {s.to_text()}" for i, s in enumerate(self.steps, 1)]
        return "\n".join([head, *body])
