# tests/test_algebra.py
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quallogic.app.algebra import (
    BOTTOM, TOP, TwistValue, eval_big, eval_g2, godel_coimpl, godel_impl, parse_twist_valuation,
    parse_valuation, unit,
)
from quallogic.app.errors import LanguageError, ModelError, UnboundVariableError
from quallogic.app.syntax import Kind, Lang, const, node, parse
from tests.strategies import formulas, grid, twist_valuations, twist_values, valuations

F = Fraction


def test_unit_reads_exact_rationals():
    assert unit("7/10") == F(7, 10)
    assert unit("0.25") == F(1, 4)
    assert unit(1) == 1
    for bad in ("3/2", -1, "x"):
        with pytest.raises(ModelError):
            unit(bad)


# ---------------- Gödel operations ----------------
@given(grid(), grid(), grid())
def test_residuation(a, b, c):
    assert (min(a, b) <= c) == (a <= godel_impl(b, c))


@given(grid(), grid(), grid())
def test_co_residuation(a, b, c):
    assert (godel_coimpl(a, b) <= c) == (a <= max(b, c))


def test_implication_and_co_implication_values():
    assert godel_impl(F(1, 2), F(1, 3)) == F(1, 3)
    assert godel_impl(F(1, 3), F(1, 2)) == 1
    assert godel_coimpl(F(1, 2), F(1, 3)) == F(1, 2)
    assert godel_coimpl(F(1, 3), F(1, 2)) == 0


# ---------------- biG ----------------
def test_nested_belief_implication_takes_the_last_value():
    f = parse(Lang.QG, "(B(p) -> B(q)) -> (B(r) -> B(s))")
    e = parse_valuation({"B(p)": "7/10", "B(q)": "6/10", "B(r)": "1/2", "B(s)": "2/5"})
    assert eval_big(f, e) == F(2, 5)


def test_strong_negation_and_delta_are_crisp():
    e = {"p": F(1, 2)}
    assert eval_big(parse(Lang.BIG, "snot p"), e) == 0
    assert eval_big(parse(Lang.BIG, "snot snot p"), e) == 1
    assert eval_big(parse(Lang.BIG, "delta p"), e) == 0
    assert eval_big(parse(Lang.BIG, "delta p"), {"p": F(1)}) == 1
    assert eval_big(parse(Lang.BIG, "Top -< p"), e) == 1


@given(formulas(Lang.BIG), valuations())
@settings(max_examples=80)
def test_delta_is_top_co_implication_negated(f, e):
    unfolded = node(Kind.IMP, node(Kind.COIMP, const(Kind.TOP, Lang.BIG), f), const(Kind.BOT, Lang.BIG))
    assert eval_big(unfolded, e) == (1 if eval_big(f, e) == 1 else 0)


def test_missing_atoms_and_wrong_languages_raise():
    with pytest.raises(UnboundVariableError):
        eval_big(parse(Lang.BIG, "p -> q"), {"p": F(1)})
    with pytest.raises(LanguageError):
        eval_big(parse(Lang.G2ORD, "neg p"), {"p": F(1)})


# ---------------- twist values ----------------
def test_twist_order():
    a, b = TwistValue(F(3, 10), F(1, 2)), TwistValue(F(0), F(0))
    assert BOTTOM.leq(a) and BOTTOM.leq(b) and a.leq(TOP)
    assert not a.comparable(b)
    assert a.neg() == TwistValue(F(1, 2), F(3, 10))


@given(twist_values(), twist_values())
def test_twist_meet_and_join_are_bounds(a, b):
    m, j = a.meet(b), a.join(b)
    assert m.leq(a) and m.leq(b)
    assert a.leq(j) and b.leq(j)


def test_delta_one_is_two_valued():
    f = parse(Lang.G2ORD, "delta1 p")
    assert eval_g2(Lang.G2ORD, f, {"p": (1, 0)}) == TOP
    assert eval_g2(Lang.G2ORD, f, {"p": (1, F(1, 2))}) == BOTTOM


def test_nelson_self_implication_keeps_falsity():
    f = parse(Lang.G2NEL, "p ~> p")
    assert eval_g2(Lang.G2NEL, f, {"p": (1, 1)}) == TwistValue(F(1), F(1))


def test_twist_implication_coordinates():
    e = parse_twist_valuation({"p": ["1/2", "1/4"], "q": ["1/3", "1/2"]})
    assert eval_g2(Lang.G2ORD, parse(Lang.G2ORD, "p -> q"), e) == TwistValue(F(1, 3), F(1, 2))
    assert eval_g2(Lang.G2ORD, parse(Lang.G2ORD, "p -< q"), e) == TwistValue(F(1, 2), F(1, 4))
    assert eval_g2(Lang.G2NEL, parse(Lang.G2NEL, "p ~> q"), e) == TwistValue(F(1, 3), F(1, 2))
    assert eval_g2(Lang.G2NEL, parse(Lang.G2NEL, "p o- q"), e) == TwistValue(F(1, 2), F(1, 3))


@pytest.mark.parametrize("lang", [Lang.G2ORD, Lang.G2NEL])
@given(data=st.data())
@settings(max_examples=60)
def test_negation_swaps_coordinates(lang, data):
    f = data.draw(formulas(lang))
    e = data.draw(twist_valuations())
    value = eval_g2(lang, f, e)
    negated = eval_g2(lang, parse(lang, f"neg ({f})"), e)
    assert negated == value.neg()


def test_twist_evaluation_rejects_other_families():
    with pytest.raises(LanguageError):
        eval_g2(Lang.G2ORD, parse(Lang.G2NEL, "p ~> p"), {"p": (1, 0)})
    with pytest.raises(LanguageError):
        eval_g2(Lang.BIG, parse(Lang.BIG, "p"), {"p": (1, 0)})
