# quallogic/routes/qp.py
from fastapi import APIRouter, Depends

import quallogic.app.schemas as schemas
from quallogic.app import commands
from quallogic.app.config import Bounds
from quallogic.dependencies import domain_errors, get_bounds

router = APIRouter(prefix="/qp", tags=["qp"])


@router.post("/sat")
def sat(req: schemas.SatRequest):
    with domain_errors():
        return commands.qp_sat(req.model, req.formula, req.state)


@router.post("/translate-sif", response_model=schemas.FormulaResponse)
def translate_sif(req: schemas.TranslateRequest):
    with domain_errors():
        return commands.translate_sif(req.formula)


@router.post("/gen-e", response_model=schemas.FormulaResponse)
def gen_e(req: schemas.ENotationRequest):
    with domain_errors():
        return commands.gen_e(req.phis, req.chis, req.layer)


@router.post("/gen-kps", response_model=schemas.FormulaResponse)
def gen_kps(req: schemas.InstanceRequest):
    with domain_errors():
        return commands.gen_kps(req.m, req.phis, req.chis, req.family)


@router.post("/counterpart")
def counterpart(req: schemas.QPCounterpartRequest):
    with domain_errors():
        return commands.qp_counterpart(req.model)


@router.post("/represent-lp")
def represent_lp(req: schemas.RepresentRequest):
    with domain_errors():
        return commands.represent_lp(req.order, req.strict, req.equal)


@router.post("/random-model")
def random_model(req: schemas.RandomModelRequest, bounds: Bounds = Depends(get_bounds)):
    with domain_errors():
        return commands.random_gardenfors(req.variables, bounds)
