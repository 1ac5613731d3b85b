"""
Hexagonal Optimality — the full chain, in order

Setup constructs p_f and p_g from their linear constraints and checks them
against the reference profiles; optional mutations (injected faults) are
applied afterwards. Then eight steps run sequentially:

  1 sign conditions of f       5 length gap
  2 sign conditions of g       6 at least six
  3 short vector               7 geometry
  4 at most six                8 local optimality

The first step that is not verified ends the run; its record is the last
one in the report.
"""

from __future__ import annotations

import logging
import time
import uuid
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from ..errors import Inconclusive, InputError, StepFalsified
from ..exact.polynomial import proportional
from ..exact.rational import RationalLike, format_rational, parse_rational
from ..fourier.certificate import RadialCertificate
from ..fourier.construct import construct_certificate
from .constants import F_CONSTRAINTS, F_RADIUS, G_CONSTRAINTS, G_RADIUS, NEAR, P_F, P_G, RHO_MAX
from .geometry import geometry_argument
from .lemmas import lemma_at_least_six, lemma_at_most_six, lemma_length_gap, lemma_short_vector, min_length
from .local import check_rho_max, local_optimality_certificate
from .report import ProofReport, StepRecord
from .sign_conditions import verify_sign_conditions
from .trace_logger import log_run, log_step

log = logging.getLogger(__name__)

STEP_COUNT = 8


@dataclass(frozen=True)
class Mutation:
    """Shift coefficient `index` of p_f or p_g by `delta`."""

    target: str
    index: int
    delta: Fraction

    @classmethod
    def parse(cls, text: str) -> Mutation:
        """`f:<index>:<delta>` or `g:<index>:<delta>`, e.g. `f:0:+1`."""
        parts = text.strip().split(":")
        if len(parts) != 3 or parts[0] not in ("f", "g"):
            raise InputError(f"cannot parse mutation {text!r}; expected f|g:<index>:<delta>")
        try:
            index = int(parts[1])
        except ValueError as exc:
            raise InputError(f"bad coefficient index in mutation {text!r}") from exc
        if index < 0:
            raise InputError(f"coefficient index must be nonnegative: {text!r}")
        return cls(parts[0], index, parse_rational(parts[2].lstrip("+")))

    def apply(self, cert: RadialCertificate) -> RadialCertificate:
        return cert.with_coefficient(self.index, self.delta)

    def __str__(self) -> str:
        return f"{self.target}:{self.index}:{format_rational(self.delta)}"


def single_coefficient_mutations(delta: RationalLike = 1, targets: Iterable[str] = ("f", "g")) -> list[Mutation]:
    """+delta and -delta on every coefficient of each target profile."""
    delta = parse_rational(delta)
    if delta == 0:
        raise InputError("mutation delta must be nonzero")
    profiles = {"f": P_F, "g": P_G}
    out = []
    for target in targets:
        if target not in profiles:
            raise InputError(f"unknown mutation target {target!r}")
        for index in range(len(profiles[target].coeffs)):
            out.extend(Mutation(target, index, sign * delta) for sign in (1, -1))
    return out


def reference_certificates() -> tuple[RadialCertificate, RadialCertificate]:
    """(f, g) built from their constraints; raises InputError if they differ from the references."""
    cert_f = construct_certificate(2, 3, F_CONSTRAINTS, F_RADIUS)
    cert_g = construct_certificate(2, 3, G_CONSTRAINTS, G_RADIUS)
    for name, cert, ref in (("f", cert_f, P_F), ("g", cert_g, P_G)):
        if not proportional(cert.p, ref):
            raise InputError(f"constructed p_{name} = {cert.p} is not proportional to the reference {ref}")
    return cert_f, cert_g


def prove_hexagonal_optimal(
    mutations: Iterable[Mutation | str] = (),
    rho_max: RationalLike = RHO_MAX,
) -> ProofReport:
    """Run the whole chain; the report's verdict is `proved` iff all eight steps verify."""
    rho_max = check_rho_max(rho_max)
    mutations = [m if isinstance(m, Mutation) else Mutation.parse(m) for m in mutations]
    run_id = uuid.uuid4().hex[:12]
    start = time.monotonic()

    cert_f, cert_g = reference_certificates()
    for m in mutations:
        if m.target == "f":
            cert_f = m.apply(cert_f)
        else:
            cert_g = m.apply(cert_g)
    report = ProofReport(
        setup={
            "f": cert_f.to_json(),
            "g": cert_g.to_json(),
            "f_constraints": [c.to_json() for c in F_CONSTRAINTS],
            "g_constraints": [c.to_json() for c in G_CONSTRAINTS],
            "mutations": [str(m) for m in mutations],
            "rho_max": format_rational(rho_max),
        },
        expected_steps=STEP_COUNT,
    )

    sign_f: Optional[StepRecord] = None
    sign_g: Optional[StepRecord] = None

    def step_sign_f() -> StepRecord:
        nonlocal sign_f
        sign_f = verify_sign_conditions(
            cert_f,
            monotone_window=(0, cert_f.sign_change_radius),
            constraints=F_CONSTRAINTS,
            name="verify_sign_conditions(f)",
            label="f",
        )
        return sign_f

    def step_sign_g() -> StepRecord:
        nonlocal sign_g
        sign_g = verify_sign_conditions(
            cert_g,
            monotone_window=(min_length(Fraction(1, 10**15)), NEAR),
            constraints=G_CONSTRAINTS,
            require_equal_origin=False,
            name="verify_sign_conditions(g)",
            label="g",
        )
        return sign_g

    steps: list[Callable[[], StepRecord]] = [
        step_sign_f,
        step_sign_g,
        lambda: lemma_short_vector(cert_f, sign_f),
        lemma_at_most_six,
        lambda: lemma_length_gap(cert_f),
        lambda: lemma_at_least_six(cert_g, sign_g),
        geometry_argument,
        lambda: local_optimality_certificate(rho_max),
    ]

    for index, step in enumerate(steps, 1):
        t0 = time.monotonic()
        try:
            record = step()
        except (StepFalsified, Inconclusive) as exc:
            record = exc.record
            report.steps.append(record)
            log.warning("step %d failed: %s", index, exc)
            log_step(
                run_id=run_id,
                index=index,
                step=record.name,
                verdict=record.verdict,
                claims=len(record.claims),
                elapsed_ms=(time.monotonic() - t0) * 1000,
                failing_claim=exc.claim,
            )
            break
        report.steps.append(record)
        log_step(
            run_id=run_id,
            index=index,
            step=record.name,
            verdict=record.verdict,
            claims=len(record.claims),
            elapsed_ms=(time.monotonic() - t0) * 1000,
        )

    log.info("hexagonal proof: %s in %.1f s", report.verdict, time.monotonic() - start)
    log_run(run_id=run_id, verdict=report.verdict, steps=len(report.steps), mutations=[str(m) for m in mutations])
    return report
