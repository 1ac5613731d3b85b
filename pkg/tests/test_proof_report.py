"""
Tests for claims, step records and proof reports.
"""

import json
from fractions import Fraction

import pytest

from app.config import override_settings
from app.errors import Inconclusive, StepFalsified
from app.exact.polynomial import Polynomial
from app.exact.sturm import Region
from app.fourier.certificate import RadialCertificate
from app.interval.compare import FALSIFIED, INCONCLUSIVE, VERIFIED
from app.interval.elementary import enclose_pi
from app.interval.interval import Interval
from app.lattice.gram import LatticeBasis
from app.poisson.summation import poisson_identity_check
from app.proof import trace_logger
from app.proof.report import (
    ENCLOSURE,
    EXACT,
    LOGIC,
    PROVED,
    SIGN,
    Claim,
    ProofReport,
    StepRecord,
    contains_claim,
    enclosure_claim,
    exact_claim,
    identity_claim,
    logic_claim,
    sign_claim,
)


# ---------------------------------------------------------------------------
# Claims
# ---------------------------------------------------------------------------

class TestClaims:
    def test_exact(self):
        claim = exact_claim("7 * 0.152 > 1", lambda: (7 * Fraction("0.152"), Fraction(1)), ">")
        assert claim.kind == EXACT
        assert claim.verified
        assert claim.lhs == Fraction("1.064")
        assert claim.to_json()["lhs"] == "133/125"

    def test_exact_false(self):
        claim = exact_claim("1 = 2", lambda: (Fraction(1), Fraction(2)), "=")
        assert claim.verdict == FALSIFIED
        assert claim.replay() == FALSIFIED

    def test_identity(self):
        claim = identity_claim("square", lambda: (Polynomial([1, 1]) * Polynomial([1, 1]), Polynomial([1, 2, 1])))
        assert claim.verified
        assert claim.detail["rhs"] == ["1/1", "2/1", "1/1"]

    def test_enclosure(self):
        claim = enclosure_claim("pi > 3", enclose_pi, ">", 3)
        assert claim.kind == ENCLOSURE
        assert claim.verified
        assert claim.lhs.lo > 3
        assert claim.rhs == Interval.point(3)

    def test_enclosure_false(self):
        assert enclosure_claim("pi < 3", enclose_pi, "<", 3).verdict == FALSIFIED

    def test_enclosure_is_strict(self):
        with pytest.raises(ValueError):
            enclosure_claim("pi <= 4", enclose_pi, "<=", 4)

    def test_contains(self):
        claim = contains_claim("pi", enclose_pi, Fraction(314159, 100000), Fraction(1, 10))
        assert claim.verified
        assert contains_claim("pi", enclose_pi, Fraction(3), Fraction(1, 100)).verdict == FALSIFIED

    def test_sign(self):
        claim = sign_claim("(ii)", Polynomial([-1, 0, -1]), Region.ray(0), "<0")
        assert claim.kind == SIGN
        assert claim.verified
        assert claim.label == "(ii): p <0 on [0, inf)"

    def test_sign_failure_keeps_witness(self):
        claim = sign_claim("(iii)", Polynomial([-2, 0, 1]), Region.ray(0), ">=0")
        assert claim.verdict == FALSIFIED
        assert "error" in claim.detail
        assert "witness" in claim.detail or "witness_interval" in claim.detail

    def test_logic(self):
        good = exact_claim("a", lambda: (Fraction(1), Fraction(0)), ">")
        bad = exact_claim("b", lambda: (Fraction(0), Fraction(1)), ">")
        undecided = Claim("c", ENCLOSURE, INCONCLUSIVE)
        assert logic_claim("ok", "text", [good]).verdict == VERIFIED
        assert logic_claim("mixed", "text", [good, undecided]).verdict == INCONCLUSIVE
        assert logic_claim("bad", "text", [good, undecided, bad]).verdict == FALSIFIED
        claim = logic_claim("ok", "text", [good])
        assert claim.kind == LOGIC
        assert claim.detail["premises"] == ["a"]

    def test_text(self):
        claim = exact_claim("one", lambda: (Fraction(1), Fraction(1)), "=")
        assert claim.to_text() == "one: 1/1 = 1/1  [verified]"


# ---------------------------------------------------------------------------
# Step records
# ---------------------------------------------------------------------------

def _record(*verdicts: str) -> StepRecord:
    record = StepRecord(name="step", lemma="statement")
    for k, v in enumerate(verdicts):
        record.add(Claim(f"claim {k}", EXACT, v))
    return record


class TestStepRecord:
    def test_verdict_precedence(self):
        assert _record(VERIFIED, VERIFIED).verdict == VERIFIED
        assert _record(VERIFIED, INCONCLUSIVE).verdict == INCONCLUSIVE
        assert _record(INCONCLUSIVE, FALSIFIED).verdict == FALSIFIED

    def test_finish(self):
        record = _record(VERIFIED)
        assert record.finish() is record

    def test_finish_falsified(self):
        record = _record(VERIFIED, FALSIFIED, VERIFIED)
        with pytest.raises(StepFalsified) as exc:
            record.finish()
        assert exc.value.claim == "claim 1"
        assert exc.value.record is record

    def test_finish_inconclusive(self):
        with pytest.raises(Inconclusive) as exc:
            _record(INCONCLUSIVE).finish()
        assert exc.value.claim == "claim 0"

    def test_claim_lookup(self):
        record = _record(VERIFIED, VERIFIED)
        assert record.claim("claim 1").label == "claim 1"
        with pytest.raises(KeyError):
            record.claim("(iv)")

    def test_json_and_text(self):
        record = _record(VERIFIED)
        record.note("checked")
        data = record.to_json()
        assert data["step"] == "step"
        assert data["verdict"] == VERIFIED
        assert data["notes"] == ["checked"]
        assert "statement" in record.to_text()

    def test_recheck(self):
        record = StepRecord(name="step", lemma="statement")
        record.add(exact_claim("one", lambda: (Fraction(1), Fraction(1)), "="))
        assert record.recheck()


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

class TestProofReport:
    def test_proved(self):
        report = ProofReport(steps=[_record(VERIFIED), _record(VERIFIED)], expected_steps=2)
        assert report.verdict == PROVED
        assert report.recheck()

    def test_missing_steps_are_inconclusive(self):
        assert ProofReport(steps=[_record(VERIFIED)], expected_steps=8).verdict == INCONCLUSIVE

    def test_falsified(self):
        assert ProofReport(steps=[_record(VERIFIED), _record(FALSIFIED)], expected_steps=8).verdict == FALSIFIED

    def test_step_lookup(self):
        report = ProofReport(steps=[_record(VERIFIED)])
        assert report.step("step").name == "step"
        with pytest.raises(KeyError):
            report.step("other")

    def test_text(self):
        report = ProofReport(steps=[_record(VERIFIED)], expected_steps=1)
        assert report.to_text().startswith("hexagonal optimality: PROVED (1 steps)")


# ---------------------------------------------------------------------------
# Trace
# ---------------------------------------------------------------------------

class TestTrace:
    @pytest.fixture(autouse=True)
    def fresh_logger(self, monkeypatch):
        monkeypatch.setattr(trace_logger, "_trace_logger", None)
        yield
        logger = trace_logger._trace_logger
        if logger is not None:
            for handler in list(logger.handlers):
                logger.removeHandler(handler)

    def test_disabled_by_default(self, capsys):
        previous = override_settings(trace=False)
        try:
            trace_logger.log_run(run_id="r", verdict=PROVED, steps=8, mutations=[])
        finally:
            override_settings(**previous)
        assert capsys.readouterr().err == ""

    def test_step_record(self, capsys):
        previous = override_settings(trace=True)
        try:
            trace_logger.log_step(
                run_id="r1",
                index=3,
                step="lemma_short_vector",
                verdict=FALSIFIED,
                claims=4,
                elapsed_ms=1.234,
                failing_claim="(ii)",
            )
        finally:
            override_settings(**previous)
        captured = capsys.readouterr()
        assert captured.out == ""
        record = json.loads(captured.err.strip().splitlines()[-1])
        assert record["type"] == "proof_step"
        assert record["index"] == 3
        assert record["elapsed_ms"] == 1.2
        assert record["failing_claim"] == "(ii)"

    def test_poisson_record(self, capsys):
        previous = override_settings(trace=True)
        try:
            poisson_identity_check(LatticeBasis.identity(2), RadialCertificate(2, Polynomial([1])), 2, lattice_id="z2")
        finally:
            override_settings(**previous)
        record = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert record["type"] == "poisson_check"
        assert record["lattice_id"] == "z2"
        assert record["radius"] == "2/1"
