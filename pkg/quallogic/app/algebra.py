# quallogic/app/algebra.py
"""Exact evaluation in the bi-Gödel chain [0,1] and the twist product [0,1]^⋈.

Evaluators take a `top` keyword so the same code runs on integer levels
0..top; the decision procedures use that to enumerate order types.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Tuple, Union

from quallogic.app.errors import LanguageError, ModelError, UnboundVariableError
from quallogic.app.syntax import (
    Formula, Kind, Lang, MODAL, NEL_FAMILY, ORD_FAMILY, GODEL_FAMILY, SYMBOL, atom_key, expand,
)
from quallogic.utils import frac_str, to_fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def unit(x) -> Fraction:
    """A rational in [0,1]."""
    try:
        q = to_fraction(x)
    except (ValueError, ZeroDivisionError):
        raise ModelError(f"not an exact rational: {x!r}") from None
    if q < 0 or q > 1:
        raise ModelError(f"{q} lies outside [0,1]")
    return q


# ---------------- Gödel operations ----------------
def godel_impl(a, b, top=ONE):
    return top if a <= b else b


def godel_coimpl(b, a, bottom=ZERO):
    """b ⥪ a."""
    return bottom if b <= a else b


def meet(a, b):
    return a if a <= b else b


def join(a, b):
    return a if a >= b else b


# ---------------- twist values ----------------
@dataclass(frozen=True)
class TwistValue:
    truth: Fraction
    falsity: Fraction

    def __iter__(self) -> Iterator[Fraction]:
        yield self.truth
        yield self.falsity

    def leq(self, other: "TwistValue") -> bool:
        return self.truth <= other.truth and self.falsity >= other.falsity

    def comparable(self, other: "TwistValue") -> bool:
        return self.leq(other) or other.leq(self)

    def neg(self) -> "TwistValue":
        return TwistValue(self.falsity, self.truth)

    def meet(self, other: "TwistValue") -> "TwistValue":
        return TwistValue(min(self.truth, other.truth), max(self.falsity, other.falsity))

    def join(self, other: "TwistValue") -> "TwistValue":
        return TwistValue(max(self.truth, other.truth), min(self.falsity, other.falsity))

    def to_json(self):
        return [frac_str(self.truth), frac_str(self.falsity)]

    @classmethod
    def of(cls, pair) -> "TwistValue":
        if isinstance(pair, TwistValue):
            return pair
        a, b = pair
        return cls(unit(a), unit(b))


TOP = TwistValue(ONE, ZERO)
BOTTOM = TwistValue(ZERO, ONE)

Valuation = Mapping[str, Fraction]
TwistValuation = Mapping[str, Union[TwistValue, Tuple]]


def parse_valuation(data: Mapping[str, object]) -> Dict[str, Fraction]:
    return {k: unit(v) for k, v in data.items()}


def parse_twist_valuation(data: Mapping[str, object]) -> Dict[str, TwistValue]:
    return {k: TwistValue.of(v) for k, v in data.items()}


def _lookup(f: Formula, e: Mapping):
    key = atom_key(f)
    try:
        return e[key]
    except KeyError:
        raise UnboundVariableError(key) from None


# ---------------- biG ----------------
def eval_big(f: Formula, e: Valuation, top=ONE):
    """Value of a biG formula (or the outer layer of a QG formula)."""
    if f.lang not in GODEL_FAMILY:
        raise LanguageError(f.lang.value, "eval-big", f"biG evaluation needs a BIG or QG formula, got {f.lang.value}")
    return big_value(f, e, top)


def big_value(f: Formula, e, top):
    k = f.kind
    if k == Kind.VAR or k in MODAL:
        return _lookup(f, e)
    if k == Kind.TOP:
        return top
    if k == Kind.BOT:
        return 0 * top
    if k == Kind.AND:
        return meet(big_value(f.left, e, top), big_value(f.right, e, top))
    if k == Kind.OR:
        return join(big_value(f.left, e, top), big_value(f.right, e, top))
    if k == Kind.IMP:
        return godel_impl(big_value(f.left, e, top), big_value(f.right, e, top), top)
    if k == Kind.COIMP:
        return godel_coimpl(big_value(f.left, e, top), big_value(f.right, e, top), 0 * top)
    if k == Kind.SNOT:
        return top if big_value(f.children[0], e, top) == 0 else 0 * top
    if k == Kind.DELTA:
        return top if big_value(f.children[0], e, top) == top else 0 * top
    if k == Kind.IFF:
        a, b = big_value(f.left, e, top), big_value(f.right, e, top)
        return meet(godel_impl(a, b, top), godel_impl(b, a, top))
    raise LanguageError(f.lang.value, SYMBOL[k])


# ---------------- G² ----------------
def g2_family(lang: Lang) -> Lang:
    """Which twist semantics a language's outer layer uses."""
    lang = Lang(lang)
    if lang in ORD_FAMILY:
        return Lang.G2ORD
    if lang in NEL_FAMILY:
        return Lang.G2NEL
    raise LanguageError(lang.value, "eval-g2", f"{lang.value} has no twist semantics")


def eval_g2(variant: Lang, f: Formula, e: TwistValuation, top=ONE) -> TwistValue:
    variant = g2_family(variant)
    if g2_family(f.lang) != variant:
        raise LanguageError(f.lang.value, variant.value,
                            f"formula of {f.lang.value} cannot be evaluated in {variant.value}")
    a, b = g2_pair(f, {k: tuple(v) for k, v in e.items()}, top)
    return TwistValue(a, b)


def g2_pair(f: Formula, e: Mapping[str, Tuple], top=ONE) -> Tuple:
    """Twist evaluation on plain pairs; the hot path of the G² decision procedure."""
    k = f.kind
    zero = 0 * top
    if k == Kind.VAR or k in MODAL:
        return _lookup(f, e)
    if k == Kind.TOP:
        return (top, zero)
    if k == Kind.BOT:
        return (zero, top)
    if k == Kind.NEG:
        a1, a2 = g2_pair(f.children[0], e, top)
        return (a2, a1)
    if k in _TWIST_BINARY:
        a1, a2 = g2_pair(f.left, e, top)
        b1, b2 = g2_pair(f.right, e, top)
        return _TWIST_BINARY[k](a1, a2, b1, b2, top, zero)
    if k in (Kind.NOT, Kind.MIMP, Kind.LEQ):
        raise LanguageError(f.lang.value, SYMBOL[k])
    return g2_pair(expand(f), e, top)


# (a1, a2) op (b1, b2); t and z are the chain's top and bottom
_TWIST_BINARY = {
    Kind.AND: lambda a1, a2, b1, b2, t, z: (meet(a1, b1), join(a2, b2)),
    Kind.OR: lambda a1, a2, b1, b2, t, z: (join(a1, b1), meet(a2, b2)),
    Kind.IMP: lambda a1, a2, b1, b2, t, z: (godel_impl(a1, b1, t), godel_coimpl(b2, a2, z)),
    Kind.COIMP: lambda a1, a2, b1, b2, t, z: (godel_coimpl(a1, b1, z), godel_impl(b2, a2, t)),
    Kind.NIMP: lambda a1, a2, b1, b2, t, z: (godel_impl(a1, b1, t), meet(a1, b2)),
    Kind.NCOIMP: lambda a1, a2, b1, b2, t, z: (godel_coimpl(a1, b1, z), join(a2, b1)),
}
