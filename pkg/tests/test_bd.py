# tests/test_bd.py
import pytest
from hypothesis import given, settings, strategies as st

from quallogic.app.bd import (
    FourValue, bd_entails, find_countermodel, four_eval, join4, leq4, meet4, neg4,
    sequent_valid_on_model, single_point_counterpart, support, truth_sets,
)
from quallogic.app.errors import LanguageError, StateError, UnboundVariableError
from quallogic.app.models import BDModel
from quallogic.app.syntax import Lang, parse
from tests.strategies import formulas

four = st.sampled_from(list(FourValue))
four_valuations = st.fixed_dictionaries({"p": four, "q": four})


def bd(text):
    return parse(Lang.BD, text)


# ---------------- the lattice ----------------
@given(four, four)
def test_de_morgan(x, y):
    assert neg4(meet4(x, y)) == join4(neg4(x), neg4(y))
    assert neg4(neg4(x)) == x


@given(four, four)
def test_meet_is_the_greatest_lower_bound(x, y):
    m = meet4(x, y)
    assert leq4(m, x) and leq4(m, y)
    assert leq4(x, y) == (m == x)


def test_both_and_neither_are_incomparable():
    assert not leq4(FourValue.B, FourValue.N) and not leq4(FourValue.N, FourValue.B)
    assert meet4(FourValue.B, FourValue.N) == FourValue.F
    assert join4(FourValue.B, FourValue.N) == FourValue.T


# ---------------- models ----------------
def test_truth_sets_of_a_contradiction():
    m = BDModel(2, {"q": 0b01}, {"q": 0b10})
    assert truth_sets(m, bd("q & neg q")) == (0, 0b11)
    assert support(m, 0, bd("q | neg q")) == (True, False)


def test_unbound_variable_and_bad_state():
    m = BDModel(1, {"p": 1}, {"p": 0})
    with pytest.raises(UnboundVariableError):
        truth_sets(m, bd("p & r"))
    with pytest.raises(StateError):
        support(m, 3, bd("p"))
    with pytest.raises(LanguageError):
        truth_sets(m, parse(Lang.BIG, "p"))


@given(formulas(Lang.BD), four_valuations)
@settings(max_examples=80)
def test_single_state_models_are_four_valued_valuations(f, v):
    m = single_point_counterpart(v)
    truth, falsity = four_eval(v, f).pair
    assert support(m, 0, f) == (bool(truth), bool(falsity))


# ---------------- entailment ----------------
def test_explosion_fails_with_a_glut():
    verdict = bd_entails(bd("p & neg p"), bd("q"))
    assert not verdict.holds
    assert verdict.witness == {"p": FourValue.B, "q": FourValue.F}


@pytest.mark.parametrize("phi, chi, holds", [
    ("p & (q | r)", "p & q | p & r", True),
    ("neg (p | q)", "neg p & neg q", True),
    ("p", "p | neg p", True),
    ("q", "p | neg p", False),
    ("p & neg p", "q | neg q", False),
])
def test_sequents(phi, chi, holds):
    assert bd_entails(bd(phi), bd(chi)).holds is holds


def test_countermodel_is_smallest():
    m = find_countermodel(bd("q"), bd("p | neg p"), max_states=2)
    assert m is not None and m.states == 1
    assert not sequent_valid_on_model(m, bd("q"), bd("p | neg p"))
    assert find_countermodel(bd("p & q"), bd("q & p"), max_states=2) is None


@given(formulas(Lang.BD, max_leaves=5), formulas(Lang.BD, max_leaves=5))
@settings(max_examples=40, deadline=None)
def test_lattice_and_model_semantics_agree(phi, chi):
    valid = bd_entails(phi, chi).holds
    assert (find_countermodel(phi, chi, max_states=1) is None) == valid
    assert (find_countermodel(phi, chi, max_states=2) is None) == valid
