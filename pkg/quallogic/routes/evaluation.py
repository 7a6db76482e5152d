# quallogic/routes/evaluation.py
from fastapi import APIRouter

import quallogic.app.schemas as schemas
from quallogic.app import commands
from quallogic.dependencies import domain_errors

router = APIRouter(prefix="/eval", tags=["eval"])


@router.post("/big", response_model=schemas.ValueResponse)
def eval_big(req: schemas.BigEvalRequest):
    with domain_errors():
        return commands.eval_big(req.formula, req.valuation, req.lang)


@router.post("/g2", response_model=schemas.ValueResponse)
def eval_g2(req: schemas.TwistEvalRequest):
    with domain_errors():
        return commands.eval_g2(req.formula, req.valuation, req.lang)


@router.post("/qg", response_model=schemas.ValueResponse)
def eval_qg(req: schemas.ModelEvalRequest):
    with domain_errors():
        return commands.eval_qg(req.formula, req.model)


@router.post("/layer", response_model=schemas.ValueResponse)
def eval_layer(req: schemas.ModelEvalRequest):
    with domain_errors():
        return commands.eval_layer(req.formula, req.model, req.lang)


# BD sequents live here too: they are evaluated, not derived
@router.post("/bd-entails", response_model=schemas.VerdictResponse)
def bd_entails(req: schemas.SequentRequest):
    with domain_errors():
        return commands.bd_entails(req.phi, req.chi, req.max_states)
