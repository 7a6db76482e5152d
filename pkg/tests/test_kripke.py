# tests/test_kripke.py
import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quallogic.app.algebra import TwistValue, eval_g2
from quallogic.app.errors import LanguageError, ModelError, StateError
from quallogic.app.kripke import (
    chain_models, chain_upsets, kentails, kglobal, ksupport, model_to_valuation, persistence_report,
    truth_sets, valuation_to_model,
)
from quallogic.app.models import KripkeModel
from quallogic.app.syntax import Lang, enumerate_formulas, parse
from tests.strategies import formulas, twist_valuations


def g2(text, lang=Lang.G2ORD):
    return parse(lang, text)


def two_chain(vplus, vminus):
    return KripkeModel(2, (0, 1), vplus, vminus)


def test_chain_upsets_grow_from_the_top():
    assert chain_upsets(3) == [0b000, 0b100, 0b110, 0b111]
    assert len(list(chain_models(2, ["p"]))) == 9


def test_valuations_must_be_upward_closed():
    with pytest.raises(ModelError):
        two_chain({"p": 0b01}, {})
    with pytest.raises(ModelError):
        KripkeModel(2, (0, 0), {}, {})
    m = two_chain({"p": 0b10}, {"p": 0})
    assert KripkeModel.from_json(m.to_json()) == m


def test_implication_looks_upward():
    m = two_chain({"p": 0b10, "q": 0}, {"p": 0, "q": 0})
    assert ksupport(m, 0, g2("p -> q")) == (False, False)
    assert ksupport(m, 1, g2("q -> p")) == (True, False)
    with pytest.raises(StateError):
        ksupport(m, 2, g2("p"))


def test_co_implication_looks_downward():
    m = two_chain({"p": 0b11, "q": 0}, {"p": 0, "q": 0})
    assert ksupport(m, 1, g2("p -< q"))[0]
    assert ksupport(m, 1, g2("p o- q", Lang.G2NEL))[0]
    assert kglobal(m, g2("p -< q")) == (True, True)
    assert kglobal(m, g2("q -< p")) == (False, True)


def test_kripke_semantics_needs_a_g2_formula():
    m = two_chain({"p": 0b10}, {"p": 0})
    with pytest.raises(LanguageError):
        truth_sets(m, parse(Lang.BIG, "p"))


# ---------------- entailment ----------------
def test_excluded_middle_fails_on_a_single_state():
    verdict = kentails([], g2("p | neg p"))
    assert not verdict.holds
    assert verdict.witness == {"state": 0}
    assert verdict.model.states == 1


@pytest.mark.parametrize("gamma, f", [
    (["p", "p -> q"], "q"),
    ([], "(p -> q) | (q -> p)"),
    (["p & q"], "q"),
])
def test_local_entailments(gamma, f):
    assert kentails([g2(x) for x in gamma], g2(f)).holds


# ---------------- persistence ----------------
def test_upward_reading_preserves_persistence():
    report = persistence_report([g2("p -< q"), g2("neg (p -< q)")], max_states=2)
    assert report["models"] > 0
    assert report["upward"] == 0
    assert report["printed"] > 0


@given(formulas(Lang.G2ORD, max_leaves=5))
@settings(max_examples=30, deadline=None)
def test_support_is_upward_closed(f):
    assert persistence_report([f], max_states=2)["upward"] == 0


# ---------------- counterparts ----------------
def _coding(e):
    coordinates = {x for v in e.values() for x in v}
    interior = sorted(x for x in coordinates if 0 < x < 1)
    n = len(coordinates) + 1
    size = {Fraction(0): 0, Fraction(1): n}
    size.update({x: i for i, x in enumerate(interior, start=1)})
    return chain_upsets(n), size


@pytest.mark.parametrize("lang", [Lang.G2ORD, Lang.G2NEL])
@given(data=st.data())
@settings(max_examples=50, deadline=None)
def test_chain_counterpart_codes_every_value_as_an_upset(lang, data):
    f = data.draw(formulas(lang, constants=True))
    e = data.draw(twist_valuations(denominator=3))
    m = valuation_to_model(e)
    upsets, size = _coding(e)
    value = eval_g2(lang, f, e)
    assert truth_sets(m, f) == (upsets[size[value.truth]], upsets[size[value.falsity]])


TWIST_GRID = [TwistValue(Fraction(a, 3), Fraction(b, 3)) for a in range(4) for b in range(4)]


@pytest.mark.parametrize("lang", [Lang.G2ORD, Lang.G2NEL])
def test_chain_counterpart_on_the_whole_grid(lang):
    pool = list(enumerate_formulas(lang, ["p", "q"], 2))
    for vp, vq in itertools.product(TWIST_GRID, repeat=2):
        e = {"p": vp, "q": vq}
        m = valuation_to_model(e)
        upsets, size = _coding(e)
        for f in pool:
            value = eval_g2(lang, f, e)
            assert truth_sets(m, f) == (upsets[size[value.truth]], upsets[size[value.falsity]]), (str(f), e)


@pytest.mark.parametrize("states", [1, 2])
def test_round_trip_through_the_valuation_keeps_global_support(states):
    pool = list(enumerate_formulas(Lang.G2ORD, ["p", "q"], 2))
    for m in chain_models(states, ["p", "q"]):
        back = valuation_to_model(model_to_valuation(m).valuation)
        for f in pool:
            assert kglobal(m, f) == kglobal(back, f), (str(f), m.to_json())


def test_classical_values_become_full_and_empty_upsets():
    m = valuation_to_model({"p": TwistValue(Fraction(1), Fraction(0))})
    assert m.states == 3
    assert m.vplus["p"] == m.full and m.vminus["p"] == 0


def test_interior_values_keep_their_order():
    m = valuation_to_model({"p": (Fraction(1, 2), Fraction(1, 4)), "q": (Fraction(3, 4), Fraction(1, 4))})
    assert m.vplus["p"] & ~m.vplus["q"] == 0 and m.vplus["p"] != m.vplus["q"]
    assert m.vminus["p"] == m.vminus["q"]


def test_model_to_valuation_lists_order_constraints():
    counterpart = model_to_valuation(two_chain({"p": 0b10}, {"p": 0}))
    assert counterpart.valuation == {"p": TwistValue(Fraction(1, 2), Fraction(0))}
    assert "v2(p) = 0" in counterpart.constraints
    assert "v2(p) <= v1(p)" in counterpart.constraints
    assert "v1(p) <= v2(p)" not in counterpart.constraints
    assert counterpart.to_json()["valuation"] == {"p": ["1/2", "0"]}
