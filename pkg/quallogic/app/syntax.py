# quallogic/app/syntax.py
"""Formula trees for every object language: parsing, printing, sugar expansion.

All languages share one grammar. The language tag decides which node kinds
are permitted and how sugar unfolds. Two-layered languages (QG, MCB, NMCB)
tag the argument of a modal atom with the inner language.
"""
import itertools
import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from quallogic.app.errors import FormulaSyntaxError, LanguageError

logger = logging.getLogger(__name__)


class Lang(str, Enum):
    CPL = "CPL"
    BD = "BD"
    BIG = "BIG"
    G2ORD = "G2ORD"
    G2NEL = "G2NEL"
    QG = "QG"
    MCB = "MCB"
    NMCB = "NMCB"
    QP = "QP"


class Kind(str, Enum):
    VAR = "var"
    NOT = "not"
    NEG = "neg"
    AND = "and"
    OR = "or"
    IMP = "imp"
    COIMP = "coimp"
    NIMP = "nimp"
    NCOIMP = "ncoimp"
    MIMP = "mimp"
    LEQ = "leq"
    B = "B"
    C = "C"
    # sugar
    TOP = "top"
    BOT = "bot"
    SNOT = "snot"
    DELTA = "delta"
    IFF = "iff"
    EQUIV = "equiv"
    APPROX = "approx"
    LESS = "less"
    DELTA1 = "delta1"
    DELTAN = "deltaN"
    DELTABANGN = "deltaBangN"
    SIMP = "simp"
    SIFF = "siff"


PRIMITIVE = frozenset({
    Kind.VAR, Kind.NOT, Kind.NEG, Kind.AND, Kind.OR, Kind.IMP, Kind.COIMP,
    Kind.NIMP, Kind.NCOIMP, Kind.MIMP, Kind.LEQ, Kind.B, Kind.C,
})
SUGAR = frozenset(set(Kind) - PRIMITIVE)
MODAL = frozenset({Kind.B, Kind.C})
UNARY = frozenset({Kind.NOT, Kind.NEG, Kind.SNOT, Kind.DELTA, Kind.DELTA1,
                   Kind.DELTAN, Kind.DELTABANGN})
CONSTANTS = frozenset({Kind.TOP, Kind.BOT})

_BIG_SET = {Kind.AND, Kind.OR, Kind.IMP, Kind.COIMP, Kind.TOP, Kind.BOT,
            Kind.SNOT, Kind.DELTA, Kind.IFF}
_G2ORD_SET = _BIG_SET | {Kind.NEG, Kind.DELTA1}
_G2NEL_SET = {Kind.NEG, Kind.AND, Kind.OR, Kind.NIMP, Kind.NCOIMP, Kind.TOP, Kind.BOT,
              Kind.SNOT, Kind.DELTA, Kind.IFF, Kind.DELTAN, Kind.DELTABANGN,
              Kind.SIMP, Kind.SIFF}

PERMITTED: Dict[Lang, frozenset] = {
    Lang.CPL: frozenset({Kind.VAR, Kind.NOT, Kind.AND, Kind.OR, Kind.MIMP,
                         Kind.TOP, Kind.BOT, Kind.EQUIV}),
    Lang.BD: frozenset({Kind.VAR, Kind.NEG, Kind.AND, Kind.OR}),
    Lang.BIG: frozenset(_BIG_SET | {Kind.VAR}),
    Lang.G2ORD: frozenset(_G2ORD_SET | {Kind.VAR}),
    Lang.G2NEL: frozenset(_G2NEL_SET | {Kind.VAR}),
    Lang.QG: frozenset(_BIG_SET | {Kind.B}),
    Lang.MCB: frozenset(_G2ORD_SET | {Kind.C}),
    Lang.NMCB: frozenset(_G2NEL_SET | {Kind.C}),
    Lang.QP: frozenset({Kind.VAR, Kind.NOT, Kind.AND, Kind.OR, Kind.MIMP, Kind.LEQ,
                        Kind.TOP, Kind.BOT, Kind.EQUIV, Kind.APPROX, Kind.LESS}),
}

INNER: Dict[Lang, Lang] = {Lang.QG: Lang.CPL, Lang.MCB: Lang.BD, Lang.NMCB: Lang.BD}
MODAL_OF: Dict[Lang, Kind] = {Lang.QG: Kind.B, Lang.MCB: Kind.C, Lang.NMCB: Kind.C}

# outer layer semantics: which algebra a language is evaluated in
GODEL_FAMILY = frozenset({Lang.BIG, Lang.QG})
ORD_FAMILY = frozenset({Lang.G2ORD, Lang.MCB})
NEL_FAMILY = frozenset({Lang.G2NEL, Lang.NMCB})

SYMBOL: Dict[Kind, str] = {
    Kind.NOT: "~", Kind.NEG: "neg", Kind.AND: "&", Kind.OR: "|", Kind.IMP: "->",
    Kind.COIMP: "-<", Kind.NIMP: "~>", Kind.NCOIMP: "o-", Kind.MIMP: "=>",
    Kind.LEQ: "<=", Kind.B: "B", Kind.C: "C", Kind.TOP: "Top", Kind.BOT: "Bot",
    Kind.SNOT: "snot", Kind.DELTA: "delta", Kind.IFF: "<->", Kind.EQUIV: "<=>",
    Kind.APPROX: "~~", Kind.LESS: "<<", Kind.DELTA1: "delta1", Kind.DELTAN: "deltaN",
    Kind.DELTABANGN: "deltaBangN", Kind.SIMP: "==>", Kind.SIFF: "<==>", Kind.VAR: "variable",
}

# precedence: 0 comparison, 1 implications, 2 disjunction, 3 conjunction, 4 prefix, 5 atom
_LEVEL: Dict[Kind, int] = {
    Kind.LEQ: 0, Kind.APPROX: 0, Kind.LESS: 0,
    Kind.IMP: 1, Kind.COIMP: 1, Kind.NIMP: 1, Kind.NCOIMP: 1, Kind.MIMP: 1,
    Kind.IFF: 1, Kind.SIMP: 1, Kind.SIFF: 1, Kind.EQUIV: 1,
    Kind.OR: 2, Kind.AND: 3,
}


@dataclass(frozen=True)
class Formula:
    kind: Kind
    lang: Lang
    children: Tuple["Formula", ...] = ()
    var: Optional[str] = None
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.kind, self.lang, self.children, self.var)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return print_formula(self)

    @property
    def left(self) -> "Formula":
        return self.children[0]

    @property
    def right(self) -> "Formula":
        return self.children[1]

    def depth(self) -> int:
        if not self.children or self.kind in MODAL:
            return 0
        return 1 + max(c.depth() for c in self.children)


# ---------------- constructors ----------------
def var(name: str, lang: Lang) -> Formula:
    return Formula(Kind.VAR, Lang(lang), (), name)


def const(kind: Kind, lang: Lang) -> Formula:
    return Formula(kind, Lang(lang))


def node(kind: Kind, *children: Formula, lang: Optional[Lang] = None) -> Formula:
    """Build a connective node; the language defaults to the first child's."""
    if lang is None:
        lang = children[0].lang
    return Formula(kind, Lang(lang), tuple(children))


def modal(inner: Formula, lang: Lang) -> Formula:
    lang = Lang(lang)
    return Formula(MODAL_OF[lang], lang, (retag(inner, INNER[lang]),))


def conj_all(items: Sequence[Formula]) -> Formula:
    out = items[0]
    for item in items[1:]:
        out = node(Kind.AND, out, item)
    return out


def disj_all(items: Sequence[Formula]) -> Formula:
    out = items[0]
    for item in items[1:]:
        out = node(Kind.OR, out, item)
    return out


def retag(f: Formula, lang: Lang) -> Formula:
    """Copy a single-layer formula under another language tag."""
    lang = Lang(lang)
    if f.lang == lang:
        return f
    if f.kind not in PERMITTED[lang]:
        raise LanguageError(lang.value, SYMBOL[f.kind])
    return Formula(f.kind, lang, tuple(retag(c, lang) for c in f.children), f.var)


# ---------------- parsing ----------------
GRAMMAR = r"""
?start: cmp

?cmp: impl
    | impl "<=" impl           -> leq
    | impl "~~" impl           -> approx
    | impl "<<" impl           -> less

?impl: disj
     | disj "->" impl          -> imp
     | disj "-<" impl          -> coimp
     | disj "~>" impl          -> nimp
     | disj "o-" impl          -> ncoimp
     | disj "=>" impl          -> mimp
     | disj "<->" impl         -> iff
     | disj "==>" impl         -> simp
     | disj "<==>" impl        -> siff
     | disj "<=>" impl         -> equiv

?disj: conj
     | disj "|" conj           -> or_

?conj: unary
     | conj "&" unary          -> and_

?unary: atom
      | "~" unary              -> not_
      | "neg" unary            -> neg
      | "snot" unary           -> snot
      | "delta" unary          -> delta
      | "delta1" unary         -> delta1
      | DELTAN unary           -> deltan
      | DELTABANGN unary       -> deltabangn

?atom: NAME                    -> variable
     | "Top"                   -> top
     | "Bot"                   -> bot
     | "B" "(" cmp ")"         -> box_b
     | "C" "(" cmp ")"         -> box_c
     | "(" cmp ")"

DELTAN.2: "deltaN"
DELTABANGN.2: "deltaBangN"
NAME: /[a-z][a-z0-9_]*/

%import common.WS
%ignore WS
"""


@dataclass(frozen=True)
class _Raw:
    kind: Kind
    children: Tuple["_Raw", ...] = ()
    var: Optional[str] = None


def _rule(kind: Kind):
    def build(self, items):
        return _Raw(kind, tuple(i for i in items if isinstance(i, _Raw)))
    return build


class _ToRaw(Transformer):
    leq = _rule(Kind.LEQ)
    approx = _rule(Kind.APPROX)
    less = _rule(Kind.LESS)
    imp = _rule(Kind.IMP)
    coimp = _rule(Kind.COIMP)
    nimp = _rule(Kind.NIMP)
    ncoimp = _rule(Kind.NCOIMP)
    mimp = _rule(Kind.MIMP)
    iff = _rule(Kind.IFF)
    simp = _rule(Kind.SIMP)
    siff = _rule(Kind.SIFF)
    equiv = _rule(Kind.EQUIV)
    or_ = _rule(Kind.OR)
    and_ = _rule(Kind.AND)
    not_ = _rule(Kind.NOT)
    neg = _rule(Kind.NEG)
    snot = _rule(Kind.SNOT)
    delta = _rule(Kind.DELTA)
    delta1 = _rule(Kind.DELTA1)
    deltan = _rule(Kind.DELTAN)
    deltabangn = _rule(Kind.DELTABANGN)
    top = _rule(Kind.TOP)
    bot = _rule(Kind.BOT)
    box_b = _rule(Kind.B)
    box_c = _rule(Kind.C)

    def variable(self, items):
        return _Raw(Kind.VAR, (), str(items[0]))


_PARSER = Lark(GRAMMAR, parser="lalr", transformer=_ToRaw())


def _build(raw: _Raw, lang: Lang, validate: bool) -> Formula:
    if raw.kind in MODAL:
        if validate and MODAL_OF.get(lang) != raw.kind:
            raise LanguageError(lang.value, SYMBOL[raw.kind],
                                f"modal atom {SYMBOL[raw.kind]}(...) is not permitted in {lang.value}")
        inner = INNER.get(lang, Lang.CPL if raw.kind == Kind.B else Lang.BD)
        return Formula(raw.kind, lang, (_build(raw.children[0], inner, validate),))
    if validate and raw.kind not in PERMITTED[lang]:
        raise LanguageError(lang.value, SYMBOL[raw.kind])
    return Formula(raw.kind, lang, tuple(_build(c, lang, validate) for c in raw.children), raw.var)


def parse(lang: Union[Lang, str], text: str, validate: bool = True) -> Formula:
    """Parse text into a formula of the given language.

    With validate=False the language check is skipped; axiom patterns use this
    to put bare metavariables where the outer language only allows atoms.
    """
    lang = Lang(lang)
    try:
        raw = _PARSER.parse(text)
    except UnexpectedInput as e:
        line = getattr(e, "line", None)
        column = getattr(e, "column", None)
        expected = getattr(e, "expected", None) or getattr(e, "allowed", None) or []
        raise FormulaSyntaxError(f"cannot parse {text!r}", text,
                                 line if line and line > 0 else None,
                                 column if column and column > 0 else None,
                                 list(expected)) from None
    except VisitError as e:
        raise FormulaSyntaxError(f"cannot parse {text!r}: {e.orig_exc}", text) from None
    return _build(raw, lang, validate)


# ---------------- printing ----------------
@lru_cache(maxsize=1 << 16)
def print_formula(f: Formula) -> str:
    return _show(f)


def _wrap(f: Formula, minimum: int) -> str:
    text = _show(f)
    return f"({text})" if _level(f) < minimum else text


def _level(f: Formula) -> int:
    if f.kind in _LEVEL:
        return _LEVEL[f.kind]
    return 4 if f.kind in UNARY else 5


def _show(f: Formula) -> str:
    k = f.kind
    if k == Kind.VAR:
        return f.var
    if k in CONSTANTS:
        return SYMBOL[k]
    if k in MODAL:
        return f"{SYMBOL[k]}({_show(f.children[0])})"
    if k in UNARY:
        operand = _wrap(f.children[0], 4)
        return f"~{operand}" if k == Kind.NOT else f"{SYMBOL[k]} {operand}"
    level = _LEVEL[k]
    if level == 0:
        left, right = _wrap(f.left, 1), _wrap(f.right, 1)
    elif level == 1:
        left, right = _wrap(f.left, 2), _wrap(f.right, 1)
    else:
        left, right = _wrap(f.left, level), _wrap(f.right, level + 1)
    return f"{left} {SYMBOL[k]} {right}"


def atom_key(f: Formula) -> str:
    """Valuation key of an outer atom: the variable name, or the printed modal atom."""
    return f.var if f.kind == Kind.VAR else print_formula(f)


# ---------------- JSON ----------------
def to_json(f: Formula, root: bool = True) -> dict:
    data = {"kind": f.kind.value, "children": [to_json(c, False) for c in f.children]}
    if f.var is not None:
        data["var"] = f.var
    if root:
        data["lang"] = f.lang.value
    return data


def from_json(data: dict, lang: Union[Lang, str, None] = None) -> Formula:
    lang = Lang(lang or data.get("lang"))
    return _build(_raw_from_json(data), lang, True)


def _raw_from_json(data: dict) -> _Raw:
    try:
        kind = Kind(data["kind"])
    except (KeyError, ValueError):
        raise FormulaSyntaxError(f"unknown node kind in {data!r}") from None
    return _Raw(kind, tuple(_raw_from_json(c) for c in data.get("children", [])), data.get("var"))


# ---------------- traversal ----------------
def subformulas(f: Formula) -> Set[Formula]:
    """Outer-layer subformulas; modal atoms count as atomic."""
    out = {f}
    if f.kind not in MODAL:
        for c in f.children:
            out |= subformulas(c)
    return out


def variables(f: Formula) -> Set[str]:
    if f.kind == Kind.VAR:
        return {f.var}
    out: Set[str] = set()
    for c in f.children:
        out |= variables(c)
    return out


def atoms(f: Formula) -> Set[Formula]:
    if f.kind == Kind.VAR or f.kind in MODAL:
        return {f}
    out: Set[Formula] = set()
    for c in f.children:
        out |= atoms(c)
    return out


def modal_atoms(formulas: Iterable[Formula]) -> List[Formula]:
    found: Set[Formula] = set()
    for f in formulas:
        found |= {a for a in atoms(f) if a.kind in MODAL}
    return sorted(found, key=print_formula)


def lits(f: Formula) -> Set[Formula]:
    if f.lang not in (Lang.BD, Lang.MCB, Lang.NMCB):
        raise LanguageError(f.lang.value, "lits", f"literals are defined for BD-layer formulas, not {f.lang.value}")
    return _lits(f)


def _lits(f: Formula) -> Set[Formula]:
    if f.kind == Kind.VAR:
        return {f}
    if f.kind == Kind.NEG and f.children[0].kind == Kind.VAR:
        return {f}
    out: Set[Formula] = set()
    for c in f.children:
        out |= _lits(c)
    return out


def fresh_variable(taken: Iterable[str], stem: str = "z") -> str:
    taken = set(taken)
    if stem not in taken:
        return stem
    for i in itertools.count(1):
        if f"{stem}{i}" not in taken:
            return f"{stem}{i}"


# ---------------- sugar ----------------
def expand(f: Formula) -> Formula:
    """Unfold one sugar node by its definition. ⊤ and ⊥ stay as constants."""
    k, lang = f.kind, f.lang
    nelson = lang in NEL_FAMILY
    imp = Kind.NIMP if nelson else Kind.IMP
    coimp = Kind.NCOIMP if nelson else Kind.COIMP
    top, bot = const(Kind.TOP, lang), const(Kind.BOT, lang)
    if k == Kind.SNOT:
        return node(imp, f.children[0], bot)
    if k == Kind.DELTA:
        return node(imp, node(coimp, top, f.children[0]), bot)
    if k == Kind.IFF:
        a, b = f.children
        return node(Kind.AND, node(imp, a, b), node(imp, b, a))
    if k == Kind.DELTA1:
        inner = node(Kind.COIMP, top, f.children[0])
        snot = node(Kind.SNOT, inner)
        return node(Kind.AND, snot, node(Kind.NEG, node(Kind.SNOT, snot)))
    if k == Kind.DELTAN:
        return node(Kind.SNOT, node(Kind.NCOIMP, top, f.children[0]))
    if k == Kind.DELTABANGN:
        return node(Kind.DELTAN, node(Kind.SIMP, top, f.children[0]))
    if k == Kind.SIMP:
        a, b = f.children
        return node(Kind.AND, node(Kind.NIMP, a, b),
                    node(Kind.NIMP, node(Kind.NEG, b), node(Kind.NEG, a)))
    if k == Kind.SIFF:
        a, b = f.children
        return node(Kind.AND, node(Kind.SIMP, a, b), node(Kind.SIMP, b, a))
    if k == Kind.EQUIV:
        a, b = f.children
        return node(Kind.AND, node(Kind.MIMP, a, b), node(Kind.MIMP, b, a))
    if k == Kind.APPROX:
        a, b = f.children
        return node(Kind.AND, node(Kind.LEQ, a, b), node(Kind.LEQ, b, a))
    if k == Kind.LESS:
        a, b = f.children
        return node(Kind.AND, node(Kind.LEQ, a, b), node(Kind.NOT, node(Kind.LEQ, b, a)))
    return f


def unfold(f: Formula) -> Formula:
    """Unfold every sugar node except the constants, in both layers."""
    while f.kind in SUGAR and f.kind not in CONSTANTS:
        f = expand(f)
    if not f.children:
        return f
    return Formula(f.kind, f.lang, tuple(unfold(c) for c in f.children), f.var)


def desugar(f: Formula) -> Formula:
    """Rewrite to primitive kinds only; ⊤/⊥ are defined over a fresh variable."""
    z = fresh_variable(variables(f))
    return _desugar(unfold(f), z)


def _constant(kind: Kind, lang: Lang, z: str) -> Formula:
    if lang in (Lang.CPL, Lang.QP):
        t = node(Kind.MIMP, var(z, lang), var(z, lang))
        return t if kind == Kind.TOP else node(Kind.NOT, t)
    if lang in INNER:
        leaf = Formula(MODAL_OF[lang], lang, (var(z, INNER[lang]),))
    else:
        leaf = var(z, lang)
    if lang in NEL_FAMILY:
        unit = node(Kind.NIMP, leaf, leaf)
        zero = node(Kind.NCOIMP, unit, unit)
        return zero if kind == Kind.BOT else node(Kind.NIMP, zero, zero)
    return node(Kind.IMP if kind == Kind.TOP else Kind.COIMP, leaf, leaf)


def _desugar(f: Formula, z: str) -> Formula:
    if f.kind in CONSTANTS:
        return _constant(f.kind, f.lang, z)
    if not f.children:
        return f
    return Formula(f.kind, f.lang, tuple(_desugar(c, z) for c in f.children), f.var)


# ---------------- classification ----------------
_COMPARISONS = frozenset({Kind.LEQ, Kind.APPROX, Kind.LESS})
_BOOLEAN = frozenset({Kind.NOT, Kind.AND, Kind.OR, Kind.MIMP, Kind.EQUIV})


def comparison_free(f: Formula) -> bool:
    return f.kind not in _COMPARISONS and all(comparison_free(c) for c in f.children)


def is_sif(f: Formula) -> bool:
    if f.lang != Lang.QP:
        raise LanguageError(f.lang.value, "sif", f"SIF classification needs a QP formula, got {f.lang.value}")
    return _sif(f)


def _sif(f: Formula) -> bool:
    if f.kind in _COMPARISONS:
        return all(comparison_free(c) for c in f.children)
    if f.kind in _BOOLEAN:
        return all(_sif(c) for c in f.children)
    return False


def normalize_ac(f: Formula):
    """Hashable normal form modulo associativity and commutativity of ∧ and ∨."""
    if f.kind in (Kind.AND, Kind.OR):
        parts = []
        stack = [f]
        while stack:
            g = stack.pop()
            if g.kind == f.kind:
                stack.extend(g.children)
            else:
                parts.append(normalize_ac(g))
        return (f.kind.value, tuple(sorted(set(parts), key=repr)))
    if f.kind == Kind.VAR:
        return ("var", f.var)
    return (f.kind.value,) + tuple(normalize_ac(c) for c in f.children)


# ---------------- generators ----------------
_DEFAULT_CONNECTIVES: Dict[Lang, Tuple[Kind, ...]] = {
    Lang.CPL: (Kind.NOT, Kind.AND, Kind.OR),
    Lang.BD: (Kind.NEG, Kind.AND, Kind.OR),
    Lang.BIG: (Kind.AND, Kind.OR, Kind.IMP, Kind.COIMP),
    Lang.QG: (Kind.AND, Kind.OR, Kind.IMP, Kind.COIMP),
    Lang.G2ORD: (Kind.NEG, Kind.AND, Kind.OR, Kind.IMP, Kind.COIMP),
    Lang.MCB: (Kind.NEG, Kind.AND, Kind.OR, Kind.IMP, Kind.COIMP),
    Lang.G2NEL: (Kind.NEG, Kind.AND, Kind.OR, Kind.NIMP, Kind.NCOIMP),
    Lang.NMCB: (Kind.NEG, Kind.AND, Kind.OR, Kind.NIMP, Kind.NCOIMP),
    Lang.QP: (Kind.NOT, Kind.AND, Kind.OR, Kind.MIMP, Kind.LEQ),
}


def _leaves(lang: Lang, leaves: Sequence[Union[str, Formula]]) -> List[Formula]:
    return [var(x, lang) if isinstance(x, str) else x for x in leaves]


def enumerate_formulas(lang: Union[Lang, str], leaves: Sequence[Union[str, Formula]], depth: int,
                       connectives: Optional[Sequence[Kind]] = None) -> Iterator[Formula]:
    """Yield every formula of depth ≤ depth, shallowest first."""
    lang = Lang(lang)
    kinds = tuple(connectives or _DEFAULT_CONNECTIVES[lang])
    unary = [k for k in kinds if k in UNARY]
    binary = [k for k in kinds if k not in UNARY]
    levels: List[List[Formula]] = [_leaves(lang, leaves)]
    yield from levels[0]
    for d in range(1, depth + 1):
        shallower = [f for level in levels[:-1] for f in level]
        newest = levels[-1]
        fresh: List[Formula] = []
        for k in unary:
            fresh.extend(node(k, f, lang=lang) for f in newest)
        for k in binary:
            for a in newest:
                for b in itertools.chain(shallower, newest):
                    fresh.append(node(k, a, b, lang=lang))
            for a in shallower:
                for b in newest:
                    fresh.append(node(k, a, b, lang=lang))
        levels.append(fresh)
        yield from fresh


def random_formula(lang: Union[Lang, str], leaves: Sequence[Union[str, Formula]], depth: int,
                   rng: random.Random, connectives: Optional[Sequence[Kind]] = None) -> Formula:
    lang = Lang(lang)
    kinds = tuple(connectives or _DEFAULT_CONNECTIVES[lang])
    pool = _leaves(lang, leaves)

    def grow(d: int) -> Formula:
        if d == 0 or rng.random() < 0.2:
            return rng.choice(pool)
        k = rng.choice(kinds)
        if k in UNARY:
            return node(k, grow(d - 1), lang=lang)
        return node(k, grow(d - 1), grow(d - 1), lang=lang)

    return grow(depth)
