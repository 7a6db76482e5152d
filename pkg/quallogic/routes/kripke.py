# quallogic/routes/kripke.py
from fastapi import APIRouter, Depends

import quallogic.app.schemas as schemas
from quallogic.app import commands
from quallogic.app.config import Bounds
from quallogic.dependencies import domain_errors, get_bounds

router = APIRouter(prefix="/kripke", tags=["kripke"])


@router.post("/support")
def support(req: schemas.SupportRequest):
    with domain_errors():
        return commands.kripke_support(req.model, req.formula, req.state, req.lang, req.printed_coimplication)


@router.post("/entails", response_model=schemas.VerdictResponse)
def entails(req: schemas.KripkeEntailmentRequest, bounds: Bounds = Depends(get_bounds)):
    with domain_errors():
        return commands.kripke_entails(req.conclusion, req.premises, req.lang or "G2ORD", bounds,
                                       req.printed_coimplication)


@router.post("/counterpart")
def counterpart(req: schemas.CounterpartRequest):
    with domain_errors():
        return commands.kripke_counterpart(req.valuation, req.model)


@router.post("/persistence")
def persistence(req: schemas.PersistenceRequest, bounds: Bounds = Depends(get_bounds)):
    with domain_errors():
        return commands.persistence(req.formulas, req.lang, bounds)
