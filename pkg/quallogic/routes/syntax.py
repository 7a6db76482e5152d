# quallogic/routes/syntax.py
from fastapi import APIRouter

import quallogic.app.schemas as schemas
from quallogic.app import commands
from quallogic.dependencies import domain_errors

router = APIRouter(prefix="/syntax", tags=["syntax"])


@router.post("/parse", response_model=schemas.FormulaResponse)
def parse_formula(req: schemas.FormulaRequest):
    with domain_errors():
        return commands.parse_formula(req.lang, req.formula)


@router.post("/print", response_model=schemas.FormulaResponse)
def print_formula(req: schemas.PrintRequest):
    with domain_errors():
        return commands.print_ast(req.ast, req.lang)
