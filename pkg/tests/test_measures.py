# tests/test_measures.py
import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from quallogic.app.algebra import TwistValue
from quallogic.app.classical import extension
from quallogic.app.errors import InconsistentValuationError, LanguageError, ModelError
from quallogic.app.measures import (
    canonical_mcb_model, canonical_qg_model, check_property, correspondence_test, eval_layer, eval_qg,
    find_frame_countermodel, frame_validates, monotone_measures, named_formula, probability_measure,
    qbel_instance,
)
from quallogic.app.models import BeliefModel, UncertaintyModel
from quallogic.app.syntax import Lang, enumerate_formulas, parse
from tests.strategies import monotone_tables, point_weights

F = Fraction


def qg(text):
    return parse(Lang.QG, text)


# ---------------- evaluation ----------------
def test_belief_comparison_on_a_two_state_frame():
    m = UncertaintyModel(2, {"p": 0b01, "q": 0b10}, (F(0), F(2, 3), F(1, 3), F(1)))
    assert eval_qg(m, qg("snot delta (B(p & ~q) -> B(~p & q))")) == 1
    assert eval_qg(m, qg("B(p) -> B(q)")) == F(1, 3)


def test_tautologies_need_not_be_believed():
    m = UncertaintyModel(1, {"r": 0}, (F(0), F(1, 2)))
    assert eval_qg(m, qg("B(r | ~r)")) == F(1, 2)


def test_evidence_for_and_against_a_contradiction():
    pi = probability_measure((F(3, 10), F(1, 5), F(1, 2)))
    m = BeliefModel(3, {"q": 0b011, "r": 0b111, "p": 0}, {"q": 0b001, "r": 0, "p": 0}, pi)
    assert eval_layer(m, Lang.MCB, parse(Lang.MCB, "C(q & neg q)")) == TwistValue(F(3, 10), F(1, 2))
    assert eval_layer(m, Lang.MCB, parse(Lang.MCB, "C(p & neg p)")) == TwistValue(F(0), F(0))
    assert eval_layer(m, Lang.NMCB, parse(Lang.NMCB, "C(r & neg r)")) == TwistValue(F(0), F(1))


def test_layer_evaluation_checks_the_language():
    m = BeliefModel(1, {"p": 1}, {"p": 0}, (F(0), F(1)))
    with pytest.raises(LanguageError):
        eval_layer(m, Lang.QG, qg("B(p)"))
    with pytest.raises(LanguageError):
        eval_layer(m, Lang.MCB, parse(Lang.NMCB, "C(p)"))


# ---------------- measure conditions ----------------
def test_probability_tables():
    table = probability_measure((F(3, 10), F(1, 5), F(1, 2)))
    assert table[0] == 0 and table[0b011] == F(1, 2) and table[0b111] == 1
    with pytest.raises(ModelError):
        probability_measure((F(1, 2), F(1, 3)))


def test_monotonicity_failure_names_the_subsets():
    verdict = check_property(2, (F(0), F(1, 2), F(0), F(1, 4)), "monotone")
    assert not verdict.holds
    assert verdict.witness == {"X": [0], "Y": [0, 1]}


def test_null_sets_that_still_matter():
    mu = (F(0), F(0), F(0), F(1, 2))
    verdict = check_property(2, mu, "cond_III")
    assert not verdict.holds
    assert verdict.witness == {"Y": [0], "Y'": [1]}
    assert not frame_validates(2, mu, named_formula("disj0")).holds


def test_complementation_on_the_crisp_frame():
    mu = (F(0), F(1))
    assert check_property(1, mu, "cond_I").holds
    assert frame_validates(1, mu, named_formula("1compl")).holds


def test_unknown_properties_and_missing_indices():
    with pytest.raises(ModelError):
        check_property(1, (F(0), F(1)), "additive")
    with pytest.raises(ModelError):
        check_property(1, (F(0), F(1)), "muKPS")
    with pytest.raises(ModelError):
        named_formula("nope")


@given(point_weights(states=3))
@settings(max_examples=25, deadline=None)
def test_probability_measures_satisfy_the_qualitative_conditions(weights):
    mu = probability_measure(weights)
    for prop in ("monotone", "capacity", "cond_II", "cond_III", "muPM", "muKPS(2)"):
        assert check_property(3, mu, prop).holds, prop


@given(monotone_tables(states=2, denominator=3))
@settings(max_examples=25, deadline=None)
def test_kps_conditions_strengthen_with_the_index(mu):
    if check_property(2, mu, "muKPS(3)").holds:
        assert check_property(2, mu, "muKPS(2)").holds


# ---------------- frames ----------------
def test_measure_enumeration_is_lexicographic():
    assert list(monotone_measures(1, 2)) == [(F(0), F(1, 2)), (F(0), F(1)), (F(1, 2), F(1))]
    assert list(monotone_measures(1, 2, ("capacity",))) == [(F(0), F(1))]


@pytest.mark.parametrize("cond", ["I", "II", "III", "IV", "QBel", "mcb_I", "mcb_II", "mcb_III", "mcb_IV"])
def test_correspondences_on_small_frames(cond):
    report = correspondence_test(cond, max_states=2, grid=3)
    assert report["frames"] > 0
    assert report["holds"], report["mismatches"][:3]


def test_qbel_witnesses_on_three_state_frames():
    report = correspondence_test("QBel", max_states=3, grid=2)
    assert report["frames"] > 0
    assert report["holds"], report["mismatches"][:3]


def _events(pool):
    masks = {"p": 0b11110000, "q": 0b11001100, "r": 0b10101010}
    seen = {}
    for f in pool:
        seen.setdefault(extension(f, masks, 0xFF), f)
    return list(seen.values())


def test_every_qbel_instance_holds_on_plausibility_frames():
    events = _events(enumerate_formulas(Lang.CPL, ["p", "q", "r"], 1))
    instances = [f for f in itertools.starmap(qbel_instance, itertools.product(events, repeat=3)) if f is not None]
    assert instances
    for n in (1, 2):
        frames = [mu for mu in monotone_measures(n, 2) if check_property(n, mu, "muPM").holds]
        assert frames
        for mu in frames:
            for f in instances:
                assert frame_validates(n, mu, f).holds, (str(f), mu)


def test_unknown_correspondence():
    with pytest.raises(ModelError):
        correspondence_test("V")


def test_smallest_frame_countermodel():
    m = find_frame_countermodel([], qg("B(r | ~r)"))
    assert m.states == 1
    assert m.mu == (F(0), F(1, 2))


def test_k_fails_on_two_states():
    m = find_frame_countermodel([], qg("B(p => q) -> (B(p) -> B(q))"))
    assert m is not None and m.states == 2
    assert find_frame_countermodel([qg("B(p)")], qg("B(p | q)"), max_states=2, grid=2) is None


@pytest.mark.parametrize("lang, text", [
    (Lang.MCB, "delta1 (C(p) -> C(q)) | delta1 (C(q) -> C(p))"),
    (Lang.NMCB, "deltaN (C(p) ==> C(q)) | deltaN (C(q) ==> C(p))"),
])
def test_evidence_values_need_not_be_comparable(lang, text):
    assert find_frame_countermodel([], parse(lang, text), max_states=2, grid=2) is not None


# ---------------- canonical models ----------------
def test_canonical_qg_model_reproduces_the_values():
    m = canonical_qg_model({"B(p)": F(1, 2), "B(p | q)": F(3, 4)})
    assert m.states == 4
    assert m.mu[0b1010] == F(1, 2)
    assert m.mu[0b1110] == F(3, 4)
    assert eval_qg(m, qg("B(p)")) == F(1, 2)


def test_canonical_qg_model_rejects_non_monotone_values():
    with pytest.raises(InconsistentValuationError):
        canonical_qg_model({"B(p)": F(3, 4), "B(p | q)": F(1, 2)})
    with pytest.raises(InconsistentValuationError):
        canonical_qg_model({"B(p)": F(1, 2), "B(~~p)": F(1, 4)})


def test_canonical_mcb_model_keeps_both_coordinates():
    m = canonical_mcb_model({"C(p)": ("1/2", "1/4")})
    assert m.states == 4
    assert m.pi[0b1010] == F(1, 2)
    assert m.pi[0b1100] == F(1, 4)
    assert eval_layer(m, Lang.MCB, parse(Lang.MCB, "C(p)")) == TwistValue(F(1, 2), F(1, 4))
