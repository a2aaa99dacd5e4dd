"""
Settings
Environment configuration for solver runs, read once per call from the process
environment (optionally seeded from a local .env file).
"""

import os
from dataclasses import dataclass
from typing import List, Optional

# Load environment variables from .env file
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass  # Continue without dotenv if not available

DEFAULT_SEEDS = [0, 1, 2, 3, 4]


@dataclass(frozen=True)
class Settings:
    """Resolved environment configuration."""
    seed_override: Optional[int]
    dense_cap: int
    output_dir: str
    log_level: str
    maxit: int
    tol: float

    @property
    def default_seeds(self) -> List[int]:
        """Seed list used when a config does not name its own seeds."""
        if self.seed_override is not None:
            return [self.seed_override]
        return list(DEFAULT_SEEDS)


def get_settings() -> Settings:
    """
    Read the LUMO_* environment variables.

    Returns:
        Settings with defaults filled in for unset variables
    """
    seed = os.getenv("LUMO_SEED")
    return Settings(
        seed_override=int(seed) if seed not in (None, "") else None,
        dense_cap=int(os.getenv("LUMO_DENSE_CAP", "4000")),
        output_dir=os.getenv("LUMO_OUTPUT_DIR", "results"),
        log_level=os.getenv("LUMO_LOG_LEVEL", "INFO").upper(),
        maxit=int(os.getenv("LUMO_MAXIT", "200")),
        tol=float(os.getenv("LUMO_TOL", "1e-7")),
    )
