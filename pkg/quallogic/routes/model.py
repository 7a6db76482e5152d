# quallogic/routes/model.py
from fastapi import APIRouter, Depends

import quallogic.app.schemas as schemas
from quallogic.app import commands
from quallogic.app.config import Bounds
from quallogic.dependencies import domain_errors, get_bounds

router = APIRouter(prefix="/model", tags=["model"])


@router.post("/check-property", response_model=schemas.VerdictResponse)
def check_property(req: schemas.PropertyRequest):
    with domain_errors():
        return commands.check_property(req.frame, req.property, req.m)


@router.post("/frame-validates", response_model=schemas.VerdictResponse)
def frame_validates(req: schemas.FrameValidityRequest):
    with domain_errors():
        return commands.frame_validates(req.frame, req.formula, req.lang)


@router.post("/correspondence")
def correspondence(req: schemas.CorrespondenceRequest):
    with domain_errors():
        return commands.correspondence(req.condition, req.max_states, req.grid)


@router.post("/search-countermodel", response_model=schemas.VerdictResponse)
def search_countermodel(req: schemas.SearchRequest, bounds: Bounds = Depends(get_bounds)):
    with domain_errors():
        return commands.search_countermodel(req.conclusion, req.premises, req.lang, req.flags, bounds)


@router.post("/canonical")
def canonical(req: schemas.CanonicalRequest):
    with domain_errors():
        return commands.canonical(req.valuation, req.formulas, req.lang)
