# quallogic/app/schemas.py
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, conint

from quallogic.app.config import MAX_BD_STATES

Number = Union[int, str]
State = conint(ge=0, lt=MAX_BD_STATES)


# ------------------ MODEL PAYLOADS ------------------
class ModelPayload(BaseModel):
    """Shape shared by model, frame and order JSON; per-kind limits are checked by the readers."""

    model_config = ConfigDict(extra="ignore")

    states: int = Field(ge=1, le=MAX_BD_STATES)
    order: Optional[List[conint(ge=0)]] = None
    v: Optional[Dict[str, List[State]]] = None
    vplus: Optional[Dict[str, List[State]]] = None
    vminus: Optional[Dict[str, List[State]]] = None
    mu: Optional[Dict[str, Any]] = None
    pi: Optional[Dict[str, Any]] = None
    weights: Optional[Dict[str, List[Any]]] = None
    rank: Optional[Dict[str, conint(ge=0)]] = None


# ------------------ SYNTAX ------------------
class FormulaRequest(BaseModel):
    lang: str = "BIG"
    formula: str


class PrintRequest(BaseModel):
    ast: Dict[str, Any]
    lang: Optional[str] = None


class FormulaResponse(BaseModel):
    formula: str
    ast: Optional[Dict[str, Any]] = None
    lang: Optional[str] = None


# ------------------ EVALUATION ------------------
class BigEvalRequest(BaseModel):
    formula: str
    lang: str = "BIG"
    valuation: Dict[str, Number]


class TwistEvalRequest(BaseModel):
    formula: str
    lang: str = "G2ORD"
    valuation: Dict[str, List[Number]]


class ModelEvalRequest(BaseModel):
    formula: str
    lang: str = "QG"
    model: Dict[str, Any]


class SequentRequest(BaseModel):
    phi: str
    chi: str
    max_states: Optional[int] = Field(default=None, ge=1)


class ValueResponse(BaseModel):
    value: Union[str, List[str]]


# ------------------ DECISION ------------------
class EntailmentRequest(BaseModel):
    conclusion: str
    premises: List[str] = []
    lang: Optional[str] = None
    strategy: str = "orders"


class VerdictResponse(BaseModel):
    status: str
    witness: Optional[Dict[str, Any]] = None
    model: Optional[Dict[str, Any]] = None
    note: Optional[str] = None


# ------------------ KRIPKE ------------------
class SupportRequest(BaseModel):
    model: Dict[str, Any]
    formula: str
    state: Optional[int] = None
    lang: str = "G2ORD"
    printed_coimplication: bool = False


class KripkeEntailmentRequest(EntailmentRequest):
    printed_coimplication: bool = False


class CounterpartRequest(BaseModel):
    valuation: Optional[Dict[str, List[Number]]] = None
    model: Optional[Dict[str, Any]] = None


class PersistenceRequest(BaseModel):
    formulas: List[str]
    lang: str = "G2ORD"


# ------------------ MEASURES ------------------
class PropertyRequest(BaseModel):
    frame: Dict[str, Any]
    property: str
    m: Optional[int] = None


class FrameValidityRequest(BaseModel):
    frame: Dict[str, Any]
    formula: str
    lang: str = "QG"


class CorrespondenceRequest(BaseModel):
    condition: str
    max_states: int = Field(default=2, ge=1)
    grid: int = Field(default=3, ge=1)


class SearchRequest(BaseModel):
    conclusion: str
    premises: List[str] = []
    lang: str = "QG"
    flags: Optional[List[str]] = None


class CanonicalRequest(BaseModel):
    valuation: Dict[str, Any]
    formulas: List[str] = []
    lang: str = "QG"


# ------------------ QUALITATIVE PROBABILITY ------------------
class SatRequest(BaseModel):
    model: Dict[str, Any]
    formula: str
    state: Optional[int] = None


class TranslateRequest(BaseModel):
    formula: str


class ENotationRequest(BaseModel):
    phis: List[str]
    chis: List[str]
    layer: str = "QG"


class InstanceRequest(BaseModel):
    m: int
    phis: List[str]
    chis: List[str]
    family: str = "KPS"


class QPCounterpartRequest(BaseModel):
    model: Dict[str, Any]


class RepresentRequest(BaseModel):
    order: Dict[str, Any]
    strict: List[List[str]] = []
    equal: List[List[str]] = []


class RandomModelRequest(BaseModel):
    variables: List[str]


# ------------------ PROOFS ------------------
class MatchAxiomRequest(BaseModel):
    calculus: str
    formula: Union[str, List[str]]
    extensions: List[str] = []


class CheckRequest(BaseModel):
    derivation: Dict[str, Any]
    premises: Optional[List[Union[str, List[str]]]] = None


class StepResponse(BaseModel):
    index: int
    ok: bool
    rule: str
    tainted: bool
    reason: Optional[str] = None


class CheckResponse(BaseModel):
    calculus: str
    status: str
    steps: List[StepResponse]
    first_failure: Optional[StepResponse] = None
