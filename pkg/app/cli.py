"""
hexcert — command-line front end

  prove-hexagonal   run the planar proof end to end
  verify-cert       sign conditions of a radial certificate
  construct-cert    unique profile meeting linear constraints
  lattice-info      Gram invariants, short vectors, density
  poisson-check     truncated Poisson summation with tail bounds
  lp-bound          LP density bound of a certificate
  schema            JSON Schema of a subcommand's report

Exit codes: 0 verified / proved / consistent, 1 falsified / violated,
2 inconclusive, 3 input or usage error. Reports go to stdout, logs and
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from pydantic import BaseModel

from .config import override_settings, settings
from .errors import (
    ClaimFalse,
    HexcertError,
    Inconclusive,
    InputError,
    PrecisionUnreachable,
    StepFalsified,
    UnverifiedCertificate,
)
from .exact.rational import format_rational, parse_rational
from .fourier.certificate import RadialCertificate, suggest_sign_change_radius
from .fourier.construct import Constraint, constraints_hold, construct_certificate
from .fourier.lp_bound import lp_density_bound, verify_lp_conditions
from .interval.compare import FALSIFIED, INCONCLUSIVE, VERIFIED
from .lattice.density import lattice_density
from .lattice.enumerate import kissing_number, minimal_norm, shortest_vectors
from .lattice.gram import GramMatrix, LatticeBasis, as_gram, gram_and_covolume, load_lattice
from .poisson.summation import CONSISTENT, VIOLATED, poisson_identity_check
from .proof.lemmas import empirical_lemma_check
from .proof.orchestrator import prove_hexagonal_optimal
from .proof.report import PROVED
from .proof.sign_conditions import verify_sign_conditions
from .schemas import (
    SCHEMAS,
    ConstructCertOut,
    ErrorOut,
    LatticeInfoOut,
    LPBoundOut,
    PoissonCheckOut,
    ProveHexagonalOut,
    VerifyCertOut,
)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3

VERDICT_EXIT = {
    VERIFIED: EXIT_OK,
    PROVED: EXIT_OK,
    CONSISTENT: EXIT_OK,
    FALSIFIED: EXIT_FALSIFIED,
    VIOLATED: EXIT_FALSIFIED,
    INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


@dataclass
class CommandResult:
    exit_code: int
    payload: str
    diagnostics: list[str] = field(default_factory=list)


class _Parser(argparse.ArgumentParser):
    """Usage errors become InputError instead of SystemExit(2)."""

    def error(self, message: str):
        raise InputError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", default=None, help="interval target width as a rational (default 1/10^12)")
    common.add_argument("--max-refine", type=int, default=None, help="refinements before 'inconclusive' (default 4)")
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = _Parser(prog="hexcert", description="Rigorous LP sphere-packing certificates and the planar hexagonal proof")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prove-hexagonal", parents=[common], help="run the eight-step planar proof")
    p.add_argument("--mutate", action="append", default=[], metavar="f|g:INDEX:DELTA",
                   help="shift one coefficient of p_f or p_g before the run (repeatable)")
    p.add_argument("--rho-max", default="12/47", help="local-optimality radius (at most 12/47)")

    p = sub.add_parser("verify-cert", parents=[common], help="certify the sign conditions of a certificate file")
    p.add_argument("file")
    p.add_argument("--monotone", default=None, metavar="LO:HI", help="radius window where f must decrease")
    p.add_argument("--no-origin-equal", action="store_true", help="require f_hat(0) > 0 instead of f(0) = f_hat(0)")

    p = sub.add_parser("construct-cert", parents=[common], help="construct a certificate from linear constraints")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--constraint", action="append", required=True,
                   help="phat-root:<u0>:<mult>, p-root:<u0>:<mult> or origin-equal (repeatable)")
    p.add_argument("--radius", default=None, help="sign-change radius to attach")

    p = sub.add_parser("lattice-info", parents=[common], help="invariants of a lattice")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--gram", help='inline Gram matrix "a,b;b,c"')
    source.add_argument("--basis", help='inline basis rows "x1,y1;x2,y2"')
    source.add_argument("--lattice", help="lattice JSON file")

    p = sub.add_parser("poisson-check", parents=[common], help="check Poisson summation for a lattice and certificate")
    p.add_argument("--lattice", required=True)
    p.add_argument("--cert", required=True)
    p.add_argument("--radius", required=True)
    p.add_argument("--tol", default="1/1000000")
    p.add_argument("--shift", default=None, help='shift in lattice coordinates "z1,z2"')

    p = sub.add_parser("lp-bound", parents=[common], help="LP density bound of a certificate")
    p.add_argument("--cert", required=True)

    p = sub.add_parser("schema", help="print the JSON Schema of a subcommand report")
    p.add_argument("target", choices=sorted(SCHEMAS))
    return parser


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _parse_rows(text: str) -> list[list]:
    rows = [row.split(",") for row in text.split(";")]
    return [[parse_rational(x) for x in row] for row in rows]


def _parse_window(text: str) -> tuple:
    parts = text.split(":")
    if len(parts) != 2:
        raise InputError(f"window must be LO:HI, got {text!r}")
    return parse_rational(parts[0]), parse_rational(parts[1])


def _render_text(model: BaseModel) -> str:
    lines = []
    for key, value in model.model_dump().items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Subcommands; each returns (verdict, model, text or None)
# ---------------------------------------------------------------------------

def _prove_hexagonal(args) -> tuple[str, BaseModel, Optional[str]]:
    report = prove_hexagonal_optimal(args.mutate, parse_rational(args.rho_max))
    model = ProveHexagonalOut(**report.to_json())
    return report.verdict, model, report.to_text()


def _verify_cert(args) -> tuple[str, BaseModel, Optional[str]]:
    data = _read_json(args.file)
    cert = RadialCertificate.from_json(data)
    constraints = [Constraint.from_json(c) for c in data.get("constraints", [])]
    window = data.get("monotone_window")
    if args.monotone is not None:
        window = _parse_window(args.monotone)
    elif window is not None:
        window = tuple(parse_rational(x) for x in window)
    equal_origin = data.get("require_equal_origin", True) and not args.no_origin_equal
    failing = None
    try:
        record = verify_sign_conditions(
            cert,
            monotone_window=window,
            constraints=constraints,
            require_equal_origin=equal_origin,
        )
    except (StepFalsified, Inconclusive) as exc:
        record, failing = exc.record, exc.claim
    model = VerifyCertOut(
        verdict=record.verdict,
        certificate=cert.to_json(),
        p_hat=cert.p_hat.to_json(),
        step=record.to_json(),
        failing_claim=failing,
    )
    return record.verdict, model, record.to_text()


def _construct_cert(args) -> tuple[str, BaseModel, Optional[str]]:
    constraints = [Constraint.parse(c) for c in args.constraint]
    cert = construct_certificate(args.dim, args.degree, constraints, args.radius)
    held = [ok for _, ok in constraints_hold(cert, constraints)]
    suggested = suggest_sign_change_radius(cert.p) if cert.sign_change_radius is None else None
    verdict = VERIFIED if all(held) else FALSIFIED
    model = ConstructCertOut(
        verdict=verdict,
        certificate=cert.to_json(),
        p_hat=cert.p_hat.to_json(),
        constraints=[c.to_json() for c in constraints],
        constraints_hold=held,
        suggested_radius=None if suggested is None else format_rational(suggested),
    )
    return verdict, model, None


def _lattice_info(args) -> tuple[str, BaseModel, Optional[str]]:
    if args.gram is not None:
        gram = GramMatrix.parse_inline(args.gram)
        covolume = gram.covolume()
    elif args.basis is not None:
        gram, covolume = gram_and_covolume(LatticeBasis.from_rationals(_parse_rows(args.basis)))
    else:
        lattice = load_lattice(args.lattice)
        if isinstance(lattice, LatticeBasis):
            gram, covolume = gram_and_covolume(lattice)
        else:
            gram, covolume = as_gram(lattice), lattice.covolume()
    shortest = shortest_vectors(gram)
    model = LatticeInfoOut(
        verdict=VERIFIED,
        dimension=gram.dimension,
        gram=gram.to_json()["gram"],
        determinant=gram.determinant().to_json(),
        covolume=covolume.to_json(),
        minimal_norm=minimal_norm(gram).to_json(),
        kissing_number=kissing_number(shortest),
        shortest_vectors=[v.to_json() for v in shortest.vectors],
        density=lattice_density(gram, settings.precision).to_json(),
        covolume_one=empirical_lemma_check(gram).to_json(),
    )
    return VERIFIED, model, None


def _poisson_check(args) -> tuple[str, BaseModel, Optional[str]]:
    lattice = load_lattice(args.lattice)
    cert = RadialCertificate.load(args.cert)
    shift = None if args.shift is None else args.shift.split(",")
    report = poisson_identity_check(
        lattice,
        cert,
        args.radius,
        tolerance=args.tol,
        shift=shift,
        lattice_id=Path(args.lattice).stem,
        certificate_id=Path(args.cert).stem,
    )
    model = PoissonCheckOut(**report.to_json())
    return report.verdict, model, None


def _lp_bound(args) -> tuple[str, BaseModel, Optional[str]]:
    cert = RadialCertificate.load(args.cert)
    try:
        conditions = verify_lp_conditions(cert)
    except UnverifiedCertificate as exc:
        model = LPBoundOut(verdict=FALSIFIED, certificate=cert.to_json(), error=str(exc))
        return FALSIFIED, model, None
    bound = lp_density_bound(cert, conditions, settings.precision)
    model = LPBoundOut(
        verdict=VERIFIED,
        certificate=cert.to_json(),
        bound=bound.to_json(),
        conditions=conditions.to_json(),
    )
    return VERIFIED, model, None


COMMANDS = {
    "prove-hexagonal": _prove_hexagonal,
    "verify-cert": _verify_cert,
    "construct-cert": _construct_cert,
    "lattice-info": _lattice_info,
    "poisson-check": _poisson_check,
    "lp-bound": _lp_bound,
}


def _exit_for_error(exc: HexcertError) -> int:
    if isinstance(exc, (ClaimFalse, StepFalsified, UnverifiedCertificate)):
        return EXIT_FALSIFIED
    if isinstance(exc, (Inconclusive, PrecisionUnreachable)):
        return EXIT_INCONCLUSIVE
    return EXIT_INPUT


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------

def run_command(argv: Sequence[str]) -> CommandResult:
    """Parse argv, run one subcommand, serialize its report."""
    command = argv[0] if argv else "hexcert"
    previous: dict = {}
    try:
        args = build_parser().parse_args(list(argv))
        command = args.command
        if command == "schema":
            schema = SCHEMAS[args.target].model_json_schema()
            return CommandResult(EXIT_OK, json.dumps(schema, indent=2, sort_keys=True))

        changes = {}
        if args.precision is not None:
            changes["precision"] = parse_rational(args.precision)
            if changes["precision"] <= 0:
                raise InputError("--precision must be positive")
        if args.max_refine is not None:
            if args.max_refine < 0:
                raise InputError("--max-refine must be nonnegative")
            changes["max_refine"] = args.max_refine
        previous = override_settings(**changes)

        verdict, model, text = COMMANDS[command](args)
        if args.format == "text":
            payload = text if text is not None else _render_text(model)
        else:
            payload = model.model_dump_json(indent=2)
        return CommandResult(VERDICT_EXIT.get(verdict, EXIT_INCONCLUSIVE), payload)
    except HexcertError as exc:
        log.debug("%s failed", command, exc_info=True)
        code = _exit_for_error(exc)
        error = ErrorOut(command=command, error_type=type(exc).__name__, message=str(exc))
        return CommandResult(code, error.model_dump_json(indent=2), [f"{type(exc).__name__}: {exc}"])
    finally:
        if previous:
            override_settings(**previous)


def main() -> None:
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    result = run_command(sys.argv[1:])
    for line in result.diagnostics:
        print(line, file=sys.stderr)
    print(result.payload)
    sys.exit(result.exit_code)


if __name__ == "__main__":
    main()
