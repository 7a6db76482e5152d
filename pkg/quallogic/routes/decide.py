# quallogic/routes/decide.py
from fastapi import APIRouter, HTTPException

import quallogic.app.schemas as schemas
from quallogic.app import commands
from quallogic.dependencies import domain_errors

router = APIRouter(prefix="/decide", tags=["decide"])


@router.post("/{query}", response_model=schemas.VerdictResponse)
def decide(query: str, req: schemas.EntailmentRequest):
    if query not in commands.DECISIONS:
        raise HTTPException(status_code=404, detail=f"unknown decision {query!r}")
    with domain_errors():
        return commands.decide_query(query, req.conclusion, req.premises, req.lang, req.strategy)
