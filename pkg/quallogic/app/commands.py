# quallogic/app/commands.py
"""JSON-in, JSON-out operations shared by the CLI and the HTTP routes."""
import logging
import random
from typing import List, Mapping, Optional, Sequence, Tuple

from quallogic.app import algebra, bd, calculi, decide, kripke, measures, qp
from quallogic.app.config import Bounds, MAX_SEARCH_GRID, MAX_SEARCH_STATES
from quallogic.app.errors import DerivationFormatError, LanguageError, ModelError, OrderError
from quallogic.app.models import (
    BeliefModel, GardenforsModel, KripkeModel, OrderInstance, UncertaintyModel, Verdict, frame_from_json,
)
from quallogic.app.syntax import Formula, Lang, from_json, parse, print_formula, to_json
from quallogic.utils import frac_str, parse_subset_key

logger = logging.getLogger(__name__)

FAILS_STATUSES = ("fails", "reject")


def read_lang(lang) -> Lang:
    if isinstance(lang, Lang):
        return lang
    try:
        return Lang(str(lang).upper())
    except ValueError:
        raise LanguageError(str(lang), "-", f"unknown language {lang!r}; known: "
                            f"{', '.join(x.value for x in Lang)}") from None


def read_formula(lang, text: str) -> Formula:
    return parse(read_lang(lang), text)


def read_formulas(lang, texts: Sequence[str]) -> List[Formula]:
    return [read_formula(lang, t) for t in texts]


def _status(holds: bool, **extra) -> dict:
    return {"status": "holds" if holds else "fails", **extra}


# ---------------- syntax ----------------
def parse_formula(lang, text: str) -> dict:
    f = read_formula(lang, text)
    return {"ast": to_json(f), "formula": print_formula(f)}


def print_ast(ast: Mapping, lang=None) -> dict:
    f = from_json(dict(ast), read_lang(lang) if lang else None)
    return {"formula": print_formula(f), "lang": f.lang.value}


# ---------------- evaluation ----------------
def eval_big(text: str, valuation: Mapping, lang="BIG") -> dict:
    f = read_formula(lang, text)
    return {"value": frac_str(algebra.eval_big(f, algebra.parse_valuation(valuation)))}


def eval_g2(text: str, valuation: Mapping, lang="G2ORD") -> dict:
    lang = read_lang(lang)
    f = read_formula(lang, text)
    value = algebra.eval_g2(algebra.g2_family(lang), f, algebra.parse_twist_valuation(valuation))
    return {"value": value.to_json()}


def eval_qg(text: str, model: Mapping) -> dict:
    f = read_formula(Lang.QG, text)
    return {"value": frac_str(measures.eval_qg(UncertaintyModel.from_json(model), f))}


def eval_layer(text: str, model: Mapping, lang="MCB") -> dict:
    lang = read_lang(lang)
    f = read_formula(lang, text)
    return {"value": measures.eval_layer(BeliefModel.from_json(model), lang, f).to_json()}


def bd_entails(phi: str, chi: str, max_states: Optional[int] = None) -> dict:
    a, b = read_formula(Lang.BD, phi), read_formula(Lang.BD, chi)
    out = bd.bd_entails(a, b).to_json()
    if max_states and out["status"] == "fails":
        found = bd.find_countermodel(a, b, max_states)
        if found is not None:
            out["model"] = found.to_json()
    return out


# ---------------- decision ----------------
DECISIONS = ("big-valid", "big-entails", "g2-entails", "qg-entails")


def decide_query(query: str, conclusion: str, premises: Sequence[str] = (), lang=None,
                 strategy: str = decide.ORDERS) -> dict:
    if query == "big-valid":
        return decide.big_valid(read_formula(lang or Lang.BIG, conclusion), strategy).to_json()
    if query == "big-entails":
        lang = lang or Lang.BIG
        return decide.big_entails(read_formulas(lang, premises), read_formula(lang, conclusion), strategy).to_json()
    if query == "g2-entails":
        lang = read_lang(lang or Lang.G2ORD)
        return decide.g2_entails(lang, read_formulas(lang, premises), read_formula(lang, conclusion),
                                 strategy).to_json()
    if query == "qg-entails":
        return decide.qg_entails(read_formulas(Lang.QG, premises), read_formula(Lang.QG, conclusion),
                                 strategy).to_json()
    raise ModelError(f"unknown decision {query!r}; known: {', '.join(DECISIONS)}")


# ---------------- Kripke ----------------
def kripke_support(model: Mapping, text: str, state: Optional[int] = None, lang="G2ORD",
                   printed_coimplication: bool = False) -> dict:
    m = KripkeModel.from_json(model)
    f = read_formula(lang, text)
    if state is None:
        positive, negative = kripke.kglobal(m, f, printed_coimplication)
    else:
        m.check_state(state)
        positive, negative = kripke.ksupport(m, state, f, printed_coimplication)
    return _status(positive, positive=positive, negative=negative)


def kripke_entails(conclusion: str, premises: Sequence[str] = (), lang="G2ORD", bounds: Bounds = Bounds(),
                   printed_coimplication: bool = False) -> dict:
    verdict = kripke.kentails(read_formulas(lang, premises), read_formula(lang, conclusion),
                              max_states=bounds.max_states, printed_coimplication=printed_coimplication)
    return verdict.to_json()


def kripke_counterpart(valuation: Optional[Mapping] = None, model: Optional[Mapping] = None) -> dict:
    if (valuation is None) == (model is None):
        raise ModelError("give either a twist valuation or a Kripke model")
    if valuation is not None:
        return {"model": kripke.valuation_to_model(algebra.parse_twist_valuation(valuation)).to_json()}
    return kripke.model_to_valuation(KripkeModel.from_json(model)).to_json()


def persistence(texts: Sequence[str], lang="G2ORD", bounds: Bounds = Bounds()) -> dict:
    return kripke.persistence_report(read_formulas(lang, texts), bounds.max_states)


# ---------------- measures ----------------
def check_property(frame: Mapping, prop: str, m: Optional[int] = None) -> dict:
    states, table = frame_from_json(frame)
    return measures.check_property(states, table, prop, m).to_json()


def frame_validates(frame: Mapping, text: str, lang="QG") -> dict:
    states, table = frame_from_json(frame)
    return measures.frame_validates(states, table, read_formula(lang, text)).to_json()


def correspondence(condition: str, max_states: int = 2, grid: int = 3) -> dict:
    report = measures.correspondence_test(condition, max_states=max_states, grid=grid)
    report["status"] = "holds" if report["holds"] else "fails"
    return report


def search_countermodel(conclusion: str, premises: Sequence[str] = (), lang="QG",
                        flags: Optional[Sequence[str]] = None, bounds: Bounds = Bounds()) -> dict:
    lang = read_lang(lang)
    found = measures.find_frame_countermodel(
        read_formulas(lang, premises), read_formula(lang, conclusion), lang, flags,
        max_states=min(bounds.max_states, MAX_SEARCH_STATES), grid=min(bounds.grid, MAX_SEARCH_GRID))
    if found is None:
        return Verdict.ok(note="no countermodel within the search bounds").to_json()
    return Verdict.refuted(model=found).to_json()


def canonical(valuation: Mapping, formulas: Sequence[str] = (), lang="QG") -> dict:
    lang = read_lang(lang)
    found = read_formulas(lang, formulas)
    if lang == Lang.QG:
        return {"model": measures.canonical_qg_model(valuation, found).to_json()}
    return {"model": measures.canonical_mcb_model(valuation, found, lang).to_json()}


# ---------------- qualitative probability ----------------
def qp_sat(model: Mapping, text: str, state: Optional[int] = None) -> dict:
    m = GardenforsModel.from_json(model)
    f = read_formula(Lang.QP, text)
    if state is None:
        return _status(qp.qp_true(m, f))
    m.check_state(state)
    return _status(qp.qp_sat(m, state, f))


def translate_sif(text: str) -> dict:
    f = qp.translate_sif(read_formula(Lang.QP, text))
    return {"formula": print_formula(f), "ast": to_json(f)}


def gen_e(phis: Sequence[str], chis: Sequence[str], layer: str = "QG") -> dict:
    a, b = read_formulas(Lang.CPL, phis), read_formulas(Lang.CPL, chis)
    f = qp.e_notation(a, b) if read_lang(layer) == Lang.QP else qp.e_g_notation(a, b)
    return {"formula": print_formula(f)}


def gen_kps(m: int, phis: Sequence[str], chis: Sequence[str], family: str = "KPS") -> dict:
    a, b = read_formulas(Lang.CPL, phis), read_formulas(Lang.CPL, chis)
    f = qp.a4_instance(m, a, b) if family.upper() == "A4" else qp.kps_instance(m, a, b)
    return {"formula": print_formula(f)}


def qp_counterpart(model: Mapping) -> dict:
    found = qp.qp_counterpart(UncertaintyModel.from_json(model))
    if found is None:
        return {"status": "fails", "note": "the measure is not representable by a probability"}
    gardenfors, state = found
    return {"status": "holds", "model": gardenfors.to_json(), "state": state}


def _pairs(raw: Sequence[Sequence[str]]) -> List[Tuple[int, int]]:
    try:
        return [(parse_subset_key(x), parse_subset_key(y)) for x, y in raw]
    except (ValueError, TypeError) as e:
        raise OrderError(f"constraints are pairs of subset keys such as [\"[0]\", \"[0,1]\"]: {e}") from None


def represent_lp(order: Mapping, strict: Sequence = (), equal: Sequence = ()) -> dict:
    try:
        instance = OrderInstance.from_json(order)
    except ValueError as e:
        raise OrderError(str(e)) from None
    witness = qp.represent_order_lp(instance, _pairs(strict), _pairs(equal))
    if witness is None:
        return {"status": "fails", "note": "no probability measure agrees with the order"}
    return {"status": "holds", "witness": witness.to_json()}


def random_gardenfors(variables: Sequence[str], bounds: Bounds = Bounds()) -> dict:
    rng = random.Random(bounds.seed)
    m = qp.random_gardenfors_model(rng, bounds.max_states, list(variables), denominator=bounds.grid)
    return {"model": m.to_json()}


# ---------------- proofs ----------------
def read_calculus(name: str) -> calculi.Calculus:
    try:
        return calculi.Calculus(str(name).upper())
    except ValueError:
        raise DerivationFormatError(f"unknown calculus {name!r}; known: "
                                    f"{', '.join(c.value for c in calculi.Calculus)}") from None


def match_axiom(calculus: str, formula, extensions: Sequence[str] = ()) -> dict:
    c = read_calculus(calculus)
    found = calculi.match_axiom(c, calculi.read_item(c, formula), extensions)
    if found is None:
        return {"status": "fails"}
    return {"status": "holds", **found.to_json()}


def check_derivation(derivation: Mapping, premises: Optional[Sequence] = None) -> dict:
    d = calculi.Derivation.from_json(derivation)
    extra = None if premises is None else [calculi.read_item(d.calculus, p) for p in premises]
    return calculi.check_derivation(d.calculus, d, extra).to_json()


def outcome(result: Mapping) -> bool:
    """False for fails/reject answers."""
    return result.get("status") not in FAILS_STATUSES
