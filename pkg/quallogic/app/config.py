# quallogic/app/config.py
import os
from dataclasses import dataclass, replace
from typing import Optional


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


@dataclass(frozen=True)
class Settings:
    max_states: int
    grid: int
    depth: int
    seed: int
    log_level: str
    max_grid_valuations: int


settings = Settings(
    max_states=_int_env("QUALLOGIC_MAX_STATES", 4),
    grid=_int_env("QUALLOGIC_GRID", 4),
    depth=_int_env("QUALLOGIC_DEPTH", 3),
    seed=_int_env("QUALLOGIC_SEED", 20230),
    log_level=os.getenv("QUALLOGIC_LOG_LEVEL", "INFO").upper(),
    max_grid_valuations=_int_env("QUALLOGIC_MAX_GRID_VALUATIONS", 2_000_000),
)

# ---------------- hard limits ----------------
MAX_BD_STATES = 64
MAX_MEASURE_STATES = 16
MAX_CPL_VARIABLES = 20
MAX_KPS_M = 4
MAX_KPS_CHECK_M = 8
MAX_KPS_CHECK_STATES = 6
MAX_LP_STATES = 12
MAX_FRAME_VARIABLES = 4
MAX_SEARCH_STATES = 4
MAX_SEARCH_GRID = 4
MAX_ORDER_COORDS = 10


@dataclass(frozen=True)
class Bounds:
    """Per-call search bounds; defaults come from the environment."""

    max_states: int = settings.max_states
    grid: int = settings.grid
    depth: int = settings.depth
    seed: int = settings.seed

    def override(self, max_states: Optional[int] = None, grid: Optional[int] = None,
                 depth: Optional[int] = None, seed: Optional[int] = None) -> "Bounds":
        changes = {k: v for k, v in
                   dict(max_states=max_states, grid=grid, depth=depth, seed=seed).items()
                   if v is not None}
        return replace(self, **changes)
