import os
from dataclasses import dataclass, fields, replace
from fractions import Fraction

from dotenv import load_dotenv

load_dotenv()  # loads .env for local runs


@dataclass(frozen=True)
class Settings:
    # Rigorous numerics
    precision: Fraction = Fraction(os.getenv("HEXCERT_PRECISION", "1/1000000000000"))
    max_refine: int = int(os.getenv("HEXCERT_MAX_REFINE", "4"))
    refine_factor: int = int(os.getenv("HEXCERT_REFINE_FACTOR", "1024"))

    # Length-gap subdivision (pieces of the u-range)
    gap_pieces: int = int(os.getenv("HEXCERT_GAP_PIECES", "64"))
    gap_max_pieces: int = int(os.getenv("HEXCERT_GAP_MAX_PIECES", "4096"))

    # Lattice enumeration
    enum_budget: int = int(os.getenv("HEXCERT_ENUM_BUDGET", "2000000"))
    max_dimension: int = int(os.getenv("HEXCERT_MAX_DIMENSION", "24"))

    # Logging
    log_level: str = os.getenv("HEXCERT_LOG_LEVEL", "WARNING")
    trace: bool = os.getenv("HEXCERT_TRACE", "0") == "1"


settings = Settings()


def override_settings(**changes) -> dict:
    """Apply CLI-level overrides to the shared singleton in place; returns the previous values.

    Modules hold a reference to `settings`, so the instance itself is updated.
    """
    updated = replace(settings, **changes)
    previous = {f.name: getattr(settings, f.name) for f in fields(settings) if f.name in changes}
    for name in changes:
        object.__setattr__(settings, name, getattr(updated, name))
    return previous
