# tests/test_calculi.py
import itertools
from pathlib import Path
import time

import pytest

from quallogic.app.calculi import (
    Calculus, Derivation, Step, check_derivation, instantiate, load_derivation, match_axiom, match_schema,
    schema_table,
)
from quallogic.app.decide import ORDERS, big_valid
from quallogic.app.errors import BoundError, DerivationFormatError
from quallogic.app.syntax import Formula, Kind, Lang, fresh_variable, parse, var, variables

DATA = Path(__file__).parent / "data"
FIXTURES = sorted(DATA.glob("*.json"))

_SYMMETRIC = {Kind.AND, Kind.OR, Kind.IFF, Kind.EQUIV, Kind.SIFF, Kind.APPROX}


def _swap_first(f: Formula):
    if len(f.children) == 2 and f.kind not in _SYMMETRIC:
        return Formula(f.kind, f.lang, (f.right, f.left), f.var)
    for i, child in enumerate(f.children):
        swapped = _swap_first(child)
        if swapped is not None:
            children = list(f.children)
            children[i] = swapped
            return Formula(f.kind, f.lang, tuple(children), f.var)
    return None


def _rename(f: Formula, old: str, new: str) -> Formula:
    if f.kind == Kind.VAR:
        return var(new, f.lang) if f.var == old else f
    if not f.children:
        return f
    return Formula(f.kind, f.lang, tuple(_rename(c, old, new) for c in f.children), f.var)


def mutate(f: Formula) -> Formula:
    """Swap the first non-symmetric binary node, or rename a variable if there is none."""
    swapped = _swap_first(f)
    if swapped is not None:
        return swapped
    taken = variables(f)
    first = sorted(taken)[0]
    return _rename(f, first, fresh_variable(taken, "s"))


def derivation(calculus, steps, premises=(), extensions=()):
    return Derivation.from_json({"calculus": calculus, "steps": steps, "premises": list(premises),
                                 "extensions": list(extensions)})


# ---------------- fixtures ----------------
@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.stem)
def test_fixture_derivations_are_accepted(path):
    d = load_derivation(path)
    report = check_derivation(d.calculus, d)
    assert report.accepted, report.first_failure
    assert report.to_json()["status"] == "accept"


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.stem)
def test_fixture_check_is_fast(path):
    d = load_derivation(path)
    start = time.perf_counter()
    assert check_derivation(d.calculus, d).accepted
    assert time.perf_counter() - start < 5


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.stem)
def test_mutated_steps_are_rejected(path):
    d = load_derivation(path)
    start = time.perf_counter()
    for i, step in enumerate(d.steps):
        steps = list(d.steps)
        steps[i] = Step(mutate(step.item), step.just)
        report = check_derivation(d.calculus, Derivation(d.calculus, steps, d.premises, d.extensions))
        assert not report.steps[i].ok, (i + 1, str(steps[i].item))
    assert time.perf_counter() - start < 5


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.stem)
def test_extra_premises_keep_a_derivation(path):
    d = load_derivation(path)
    extra = parse(Lang.QG, "B(z) -> B(z | y)")
    assert check_derivation(d.calculus, d, premises=d.premises + [extra]).accepted


# ---------------- premises ----------------
def test_necessitation_of_a_premise_is_rejected():
    d = derivation("HQG", [
        {"formula": "B(p)", "just": {"premise": 1}},
        {"formula": "delta B(p)", "just": {"nec": 1}},
    ], premises=["B(p)"])
    report = check_derivation(Calculus.HQG, d)
    assert not report.accepted
    assert report.first_failure.index == 2
    assert "depends on premises" in report.first_failure.reason


def test_modus_ponens_carries_the_premise_dependency():
    d = derivation("HBIG", [
        {"formula": "p", "just": {"premise": 1}},
        {"formula": "p -> q", "just": {"premise": 2}},
        {"formula": "q", "just": {"mp": [1, 2]}},
    ], premises=["p", "p -> q"])
    report = check_derivation(Calculus.HBIG, d)
    assert report.accepted
    assert report.steps[2].tainted
    assert report.steps[2].rule == "mp"


def test_missing_premise():
    d = derivation("HBIG", [{"formula": "p", "just": {"premise": 1}}])
    report = check_derivation(Calculus.HBIG, d)
    assert not report.accepted
    assert "not among the premises" in report.first_failure.reason


def test_necessitation_in_qp():
    d = derivation("HQP", [
        {"formula": "Bot <= p", "just": {"axiom": "A1"}},
        {"formula": "(Bot <= p) ~~ Top", "just": {"nec": 1}},
    ])
    assert check_derivation(Calculus.HQP, d).accepted


def test_fde_rules():
    d = derivation("RFDE", [
        {"sequent": ["p & q", "q"], "just": {"axiom": "and_e2"}},
        {"sequent": ["p & q", "p"], "just": {"axiom": "and_e1"}},
        {"sequent": ["p & q", "q & p"], "just": {"rule": "and_i", "from": [1, 2]}},
        {"sequent": ["q & p", "q & p | r"], "just": {"axiom": "or_i1"}},
        {"sequent": ["p & q", "q & p | r"], "just": {"rule": "trans", "from": [3, 4]}},
        {"sequent": ["q", "q & p | r"], "just": {"rule": "trans", "from": [3, 4]}},
    ])
    report = check_derivation(Calculus.RFDE, d)
    assert [s.ok for s in report.steps] == [True] * 5 + [False]


def test_malformed_derivations_raise():
    later = derivation("HBIG", [{"formula": "q", "just": {"mp": [1, 2]}}])
    with pytest.raises(DerivationFormatError):
        check_derivation(Calculus.HBIG, later)
    doubled = derivation("HBIG", [{"formula": "p -> p", "just": {"axiom": "1", "logic": []}}])
    with pytest.raises(DerivationFormatError):
        check_derivation(Calculus.HBIG, doubled)
    with pytest.raises(DerivationFormatError):
        Derivation.from_json({"calculus": "HX", "steps": []})
    with pytest.raises(DerivationFormatError):
        derivation("HBIG", [])


# ---------------- axiom matching ----------------
@pytest.mark.parametrize("calculus, lang, text, schema", [
    (Calculus.HQG, Lang.QG, "B(p & q) -> B(p)", "reg"),
    (Calculus.HQG, Lang.QG, "snot delta (B(p | ~p) -> B(q & ~q))", "nontriv"),
    (Calculus.HMCB, Lang.MCB, "C(p & q) -> C(p)", "MCB_BD"),
    (Calculus.HQP, Lang.QP, "Bot <= p", "A1"),
    (Calculus.HQP, Lang.QP, "(p <= q) | (q <= p)", "A2"),
    (Calculus.HQP, Lang.QP, "(p <= q) => (p <= q)", "PC"),
    (Calculus.HBIG, Lang.BIG, "(p & q -> r) -> (p -> (q -> r))", "6b"),
    (Calculus.HG2NEL, Lang.G2NEL, "neg (p ~> q) <-> (p & neg q)", "DeM_nimp"),
])
def test_match_axiom(calculus, lang, text, schema):
    found = match_axiom(calculus, parse(lang, text))
    assert found is not None and found.schema == schema


def test_side_conditions_are_checked():
    assert match_axiom(Calculus.HQG, parse(Lang.QG, "B(p) -> B(p & q)")) is None
    assert match_axiom(Calculus.HMCB, parse(Lang.MCB, "C(p) -> C(p & q)")) is None


def test_kps_index_is_read_off_the_instance():
    d = load_derivation(DATA / "additivity.json")
    found = match_schema(Calculus.HQPG, "KPS", d.steps[2].item, extensions=d.extensions)
    assert found.m == 1
    assert match_schema(Calculus.HQPG, "KPS", d.steps[2].item, m=2, extensions=d.extensions) is None


def test_extensions_switch_schemas_on():
    f = parse(Lang.QG, "B(Top) & snot B(Bot)")
    assert match_axiom(Calculus.HQG, f) is None
    assert match_axiom(Calculus.HQG, f, ["cap"]).schema == "cap"
    with pytest.raises(DerivationFormatError):
        match_axiom(Calculus.HBIG, parse(Lang.BIG, "p"), ["cap"])


def test_kps_beyond_the_recognized_index():
    text = " & ".join(["delta (B(p) -> B(q))"] * 6) + " -> delta (B(r) -> B(s))"
    with pytest.raises(BoundError):
        match_axiom(Calculus.HQPG, parse(Lang.QG, text))


def test_big_schemas_are_valid():
    pool = [parse(Lang.BIG, t) for t in ("p", "q", "p -> q", "p -< q", "Top", "Bot")]
    for name in schema_table(Calculus.HBIG):
        for a, b, c in itertools.product(pool, repeat=3):
            f = instantiate(Calculus.HBIG, name, {"a": a, "b": b, "c": c})
            assert big_valid(f, ORDERS).holds, (name, str(f))


def test_logic_step_from_premises_sharing_atoms():
    d = derivation("HBIG", [
        {"formula": "p & q & r & s & t", "just": {"premise": 1}},
        {"formula": "t & s & r & q & p", "just": {"premise": 2}},
        {"formula": "p", "just": {"logic": [1, 2]}},
    ], premises=["p & q & r & s & t", "t & s & r & q & p"])
    report = check_derivation(Calculus.HBIG, d)
    assert report.accepted, report.first_failure
    assert report.steps[2].tainted
