"""
Run every single-coefficient fault through the planar proof and report which
ones the chain catches.

Each mutation shifts one coefficient of p_f or p_g by +DELTA or -DELTA and
reruns prove-hexagonal. A mutation is caught when the run ends falsified;
the step that caught it is printed. Exits 1 if any mutation is missed.

Usage:
    python scripts/mutation_suite.py
    python scripts/mutation_suite.py --delta 1/1000 --json
    HEXCERT_LOG_LEVEL=INFO python scripts/mutation_suite.py --target g
"""
import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from app.exact.rational import format_rational, parse_rational  # noqa: E402
from app.interval.compare import FALSIFIED  # noqa: E402
from app.proof.orchestrator import prove_hexagonal_optimal, single_coefficient_mutations  # noqa: E402


def main() -> None:
    parser = argparse.ArgumentParser(description="Fault-injection sweep over the planar proof")
    parser.add_argument("--delta", default="1", help="size of each coefficient shift (rational)")
    parser.add_argument("--target", choices=("f", "g", "both"), default="both")
    parser.add_argument("--json", action="store_true", help="print one JSON summary instead of a table")
    args = parser.parse_args()

    logging.basicConfig(
        level=os.getenv("HEXCERT_LOG_LEVEL", "WARNING").upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    delta = parse_rational(args.delta)
    if delta == 0:
        print("ERROR: --delta must be nonzero.")
        sys.exit(2)
    targets = ["f", "g"] if args.target == "both" else [args.target]

    # ------------------------------------------------------------------ #
    # Sweep
    # ------------------------------------------------------------------ #
    rows = []
    for m in single_coefficient_mutations(delta, targets):
        t0 = time.monotonic()
        report = prove_hexagonal_optimal([m])
        last = report.steps[-1] if report.steps else None
        failing = last.failing() if last is not None else None
        rows.append(
            {
                "mutation": str(m),
                "verdict": report.verdict,
                "caught": report.verdict == FALSIFIED,
                "step": last.name if last is not None else None,
                "claim": failing.label if failing is not None else None,
                "seconds": round(time.monotonic() - t0, 2),
            }
        )
        if not args.json:
            row = rows[-1]
            mark = "caught" if row["caught"] else "MISSED"
            print(f"  {row['mutation']:<14} {mark:<7} {row['step'] or '-':<32} {row['claim'] or ''}")

    # ------------------------------------------------------------------ #
    # Summary
    # ------------------------------------------------------------------ #
    missed = [r["mutation"] for r in rows if not r["caught"]]
    if args.json:
        print(json.dumps({"delta": format_rational(delta), "runs": rows, "missed": missed}, indent=2))
    else:
        print(f"\n{len(rows) - len(missed)}/{len(rows)} mutations caught")
        for name in missed:
            print(f"  missed: {name}")
    sys.exit(1 if missed else 0)


if __name__ == "__main__":
    main()
