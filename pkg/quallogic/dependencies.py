# quallogic/dependencies.py
import logging
from contextlib import contextmanager
from typing import Optional

from fastapi import HTTPException, Query, status

from quallogic.app.config import Bounds
from quallogic.app.errors import QualLogicError

logger = logging.getLogger(__name__)


def get_bounds(
    max_states: Optional[int] = Query(default=None, ge=1),
    grid: Optional[int] = Query(default=None, ge=1),
    depth: Optional[int] = Query(default=None, ge=0),
    seed: Optional[int] = Query(default=None),
) -> Bounds:
    return Bounds().override(max_states=max_states, grid=grid, depth=depth, seed=seed)


@contextmanager
def domain_errors():
    """Turn workbench errors into 400 responses."""
    try:
        yield
    except QualLogicError as e:
        logger.info("rejected request: %s: %s", e.kind, e.message)
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail={"error": e.kind, "detail": e.message},
        )
