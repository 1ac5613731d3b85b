"""
Tests for the full hexagonal-optimality chain and injected faults.
"""

from fractions import Fraction

import pytest

from app.errors import InputError, PreconditionFailed
from app.interval.compare import FALSIFIED, VERIFIED
from app.proof.constants import P_F, P_G
from app.proof.orchestrator import (
    STEP_COUNT,
    Mutation,
    prove_hexagonal_optimal,
    reference_certificates,
    single_coefficient_mutations,
)
from app.proof.report import PROVED

STEP_NAMES = [
    "verify_sign_conditions(f)",
    "verify_sign_conditions(g)",
    "lemma_short_vector",
    "lemma_at_most_six",
    "lemma_length_gap",
    "lemma_at_least_six",
    "geometry_argument",
    "local_optimality_certificate",
]


# ---------------------------------------------------------------------------
# Mutations
# ---------------------------------------------------------------------------

class TestMutation:
    def test_parse(self):
        assert Mutation.parse("f:0:+1") == Mutation("f", 0, Fraction(1))
        assert Mutation.parse("g:3:-1/2") == Mutation("g", 3, Fraction(-1, 2))

    @pytest.mark.parametrize("text", ["h:0:1", "f:x:1", "f:-1:1", "f:0", "f:0:one", ""])
    def test_bad_syntax(self, text):
        with pytest.raises(InputError):
            Mutation.parse(text)

    def test_apply(self):
        cert_f, _ = reference_certificates()
        mutated = Mutation.parse("f:3:1").apply(cert_f)
        assert mutated.p.coefficient(3) == -215
        assert mutated.sign_change_radius == cert_f.sign_change_radius

    def test_str(self):
        assert str(Mutation.parse("f:0:+1")) == "f:0:1/1"

    def test_single_coefficient_sweep(self):
        sweep = single_coefficient_mutations()
        assert len(sweep) == 16
        assert Mutation("f", 0, Fraction(1)) in sweep
        assert Mutation("g", 3, Fraction(-1)) in sweep
        assert len(single_coefficient_mutations("1/2", ["g"])) == 8

    @pytest.mark.parametrize("delta, targets", [(0, ["f"]), (1, ["h"])])
    def test_sweep_rejects_bad_input(self, delta, targets):
        with pytest.raises(InputError):
            single_coefficient_mutations(delta, targets)


class TestReferenceCertificates:
    def test_profiles(self):
        cert_f, cert_g = reference_certificates()
        assert cert_f.p == P_F
        assert cert_g.p == P_G
        assert cert_f.sign_change_radius == Fraction("1.084")
        assert cert_g.sign_change_radius == Fraction("1.62")


# ---------------------------------------------------------------------------
# Chain
# ---------------------------------------------------------------------------

@pytest.mark.slow
class TestProveHexagonalOptimal:
    def test_proved(self):
        report = prove_hexagonal_optimal()
        assert report.verdict == PROVED
        assert [s.name for s in report.steps] == STEP_NAMES
        assert len(report.steps) == STEP_COUNT
        assert all(s.verdict == VERIFIED for s in report.steps)
        assert report.recheck()
        data = report.to_json()
        assert data["verdict"] == PROVED
        assert data["setup"]["mutations"] == []
        assert data["setup"]["rho_max"] == "12/47"


class TestInjectedFaults:
    @pytest.mark.parametrize("mutation", ["f:0:+1", "f:1:-1", "f:2:1", "f:3:-1"])
    def test_f_mutations_stop_at_first_step(self, mutation):
        report = prove_hexagonal_optimal([mutation])
        assert report.verdict == FALSIFIED
        assert len(report.steps) == 1
        assert report.steps[0].verdict == FALSIFIED
        assert report.setup["mutations"] == [str(Mutation.parse(mutation))]

    @pytest.mark.parametrize("mutation", ["g:0:+1", "g:3:1"])
    def test_g_mutations_stop_at_second_step(self, mutation):
        report = prove_hexagonal_optimal([mutation])
        assert report.verdict == FALSIFIED
        assert [s.verdict for s in report.steps] == [VERIFIED, FALSIFIED]
        assert report.steps[-1].name == "verify_sign_conditions(g)"
        assert report.steps[-1].failing() is not None

    @pytest.mark.parametrize("mutation", single_coefficient_mutations(), ids=str)
    def test_every_unit_shift_is_caught(self, mutation):
        report = prove_hexagonal_optimal([mutation])
        assert report.verdict == FALSIFIED
        expected_step = "verify_sign_conditions(f)" if mutation.target == "f" else "verify_sign_conditions(g)"
        assert report.steps[-1].name == expected_step

    def test_rho_max_above_threshold(self):
        with pytest.raises(PreconditionFailed):
            prove_hexagonal_optimal(rho_max="1/3")

    def test_bad_mutation(self):
        with pytest.raises(InputError):
            prove_hexagonal_optimal(["q:0:1"])
