"""
Structured JSON trace of proof runs.

One flat record per finished step, per run and per Poisson check, written to stderr when
HEXCERT_TRACE=1. Reports themselves go to stdout; the trace never does.
"""
from __future__ import annotations

import json
import logging
import sys
from datetime import datetime, timezone
from typing import Any, Optional

from ..config import settings

# Dedicated logger for trace events (separate from operational logs)
_trace_logger: Optional[logging.Logger] = None


def _get_trace_logger() -> logging.Logger:
    """Get or create the trace logger with JSON formatting."""
    global _trace_logger
    if _trace_logger is not None:
        return _trace_logger

    _trace_logger = logging.getLogger("hexcert.trace")
    _trace_logger.setLevel(logging.INFO)
    _trace_logger.propagate = False

    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(logging.INFO)

    class JsonFormatter(logging.Formatter):
        def format(self, record: logging.LogRecord) -> str:
            # record.msg is already a dict for trace records
            if isinstance(record.msg, dict):
                return json.dumps(record.msg, default=str, ensure_ascii=False, sort_keys=True)
            return super().format(record)

    handler.setFormatter(JsonFormatter())
    _trace_logger.addHandler(handler)

    return _trace_logger


def _now() -> str:
    return datetime.now(timezone.utc).isoformat().replace("+00:00", "Z")


def log_step(
    *,
    run_id: str,
    index: int,
    step: str,
    verdict: str,
    claims: int,
    elapsed_ms: float,
    failing_claim: Optional[str] = None,
) -> None:
    """
    Log a single structured record for a finished proof step.

    Args:
        run_id: Identifier shared by every record of one run
        index: 1-based position of the step in the chain
        step: Step name (e.g. "lemma_length_gap")
        verdict: verified / falsified / inconclusive
        claims: Number of claims the step recorded
        elapsed_ms: Wall time spent in the step
        failing_claim: Label of the first non-verified claim, if any
    """
    if not settings.trace:
        return
    record: dict[str, Any] = {
        "type": "proof_step",
        "ts": _now(),
        "run_id": run_id,
        "index": index,
        "step": step,
        "verdict": verdict,
        "claims": claims,
        "elapsed_ms": round(elapsed_ms, 1),
    }
    if failing_claim is not None:
        record["failing_claim"] = failing_claim
    _get_trace_logger().info(record)


def log_run(*, run_id: str, verdict: str, steps: int, mutations: list[str]) -> None:
    if not settings.trace:
        return
    _get_trace_logger().info(
        {
            "type": "proof_run",
            "ts": _now(),
            "run_id": run_id,
            "verdict": verdict,
            "steps": steps,
            "mutations": mutations,
        }
    )


def log_poisson_check(
    *,
    lattice_id: str,
    certificate_id: str,
    radius: str,
    verdict: str,
    gap: list[str],
    elapsed_ms: float,
) -> None:
    if not settings.trace:
        return
    _get_trace_logger().info(
        {
            "type": "poisson_check",
            "ts": _now(),
            "lattice_id": lattice_id,
            "certificate_id": certificate_id,
            "radius": radius,
            "verdict": verdict,
            "gap": gap,
            "elapsed_ms": round(elapsed_ms, 1),
        }
    )
