# tests/strategies.py
"""Hypothesis strategies shared by the test modules."""
from fractions import Fraction
from typing import Sequence

from hypothesis import strategies as st

from quallogic.app.algebra import TwistValue
from quallogic.app.syntax import Kind, Lang, const, modal, node, var

NAMES = ("p", "q")

CONNECTIVES = {
    Lang.CPL: (Kind.NOT, Kind.AND, Kind.OR, Kind.MIMP),
    Lang.BD: (Kind.NEG, Kind.AND, Kind.OR),
    Lang.BIG: (Kind.AND, Kind.OR, Kind.IMP, Kind.COIMP, Kind.SNOT, Kind.DELTA),
    Lang.QG: (Kind.AND, Kind.OR, Kind.IMP, Kind.COIMP, Kind.SNOT, Kind.DELTA),
    Lang.G2ORD: (Kind.NEG, Kind.AND, Kind.OR, Kind.IMP, Kind.COIMP),
    Lang.G2NEL: (Kind.NEG, Kind.AND, Kind.OR, Kind.NIMP, Kind.NCOIMP),
    Lang.QP: (Kind.NOT, Kind.AND, Kind.OR, Kind.MIMP, Kind.LEQ),
}
UNARY = (Kind.NOT, Kind.NEG, Kind.SNOT, Kind.DELTA)


def _leaves(lang: Lang, names: Sequence[str], constants: bool):
    if lang == Lang.QG:
        pool = [modal(var(p, Lang.CPL), Lang.QG) for p in names]
    else:
        pool = [var(p, lang) for p in names]
    if constants and lang != Lang.BD:
        pool += [const(Kind.TOP, lang), const(Kind.BOT, lang)]
    return st.sampled_from(pool)


def formulas(lang: Lang, names: Sequence[str] = NAMES, max_leaves: int = 8, constants: bool = False):
    lang = Lang(lang)
    kinds = CONNECTIVES[lang]
    unary = [k for k in kinds if k in UNARY]
    binary = [k for k in kinds if k not in UNARY]

    def extend(children):
        options = [st.tuples(st.sampled_from(binary), children, children).map(
            lambda t: node(t[0], t[1], t[2], lang=lang))]
        if unary:
            options.append(st.tuples(st.sampled_from(unary), children).map(
                lambda t: node(t[0], t[1], lang=lang)))
        return st.one_of(*options)

    return st.recursive(_leaves(lang, names, constants), extend, max_leaves=max_leaves)


def grid(denominator: int = 6):
    return st.integers(0, denominator).map(lambda i: Fraction(i, denominator))


def valuations(names: Sequence[str] = NAMES, denominator: int = 6):
    return st.fixed_dictionaries({p: grid(denominator) for p in names})


def twist_values(denominator: int = 6):
    return st.builds(TwistValue, grid(denominator), grid(denominator))


def twist_valuations(names: Sequence[str] = NAMES, denominator: int = 6):
    return st.fixed_dictionaries({p: twist_values(denominator) for p in names})


@st.composite
def monotone_tables(draw, states: int = 2, denominator: int = 4, nontrivial: bool = True):
    """A monotone measure table over all subsets of a small frame."""
    size = 1 << states
    table = [Fraction(0)] * size
    for x in range(size):
        low = max((table[x & ~(1 << i)] for i in range(states) if x >> i & 1), default=Fraction(0))
        choices = [Fraction(i, denominator) for i in range(denominator + 1) if Fraction(i, denominator) >= low]
        table[x] = draw(st.sampled_from(choices))
    # a constant table: lift the top or drop the bottom
    if nontrivial and table[0] == table[-1]:
        if table[-1] < 1:
            table[-1] = Fraction(1)
        else:
            table[0] = Fraction(0)
    return tuple(table)


@st.composite
def point_weights(draw, states: int = 3, denominator: int = 6):
    raw = draw(st.lists(st.integers(0, denominator), min_size=states, max_size=states))
    if not any(raw):
        raw[0] = 1
    total = sum(raw)
    return tuple(Fraction(w, total) for w in raw)
