# quallogic/routes/prove.py
from fastapi import APIRouter

import quallogic.app.schemas as schemas
from quallogic.app import commands
from quallogic.dependencies import domain_errors

router = APIRouter(prefix="/prove", tags=["prove"])


@router.post("/match-axiom")
def match_axiom(req: schemas.MatchAxiomRequest):
    with domain_errors():
        return commands.match_axiom(req.calculus, req.formula, req.extensions)


@router.post("/check", response_model=schemas.CheckResponse)
def check(req: schemas.CheckRequest):
    with domain_errors():
        return commands.check_derivation(req.derivation, req.premises)
