# quallogic/app/bd.py
"""Belnap–Dunn: supports on finite models and the four-valued lattice."""
import itertools
import logging
from enum import Enum
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple

from quallogic.app.errors import LanguageError, UnboundVariableError
from quallogic.app.models import BDModel, Verdict
from quallogic.app.syntax import Formula, Kind, Lang, SYMBOL, variables

logger = logging.getLogger(__name__)

BD_LAYER = (Lang.BD, Lang.MCB, Lang.NMCB)


class FourValue(str, Enum):
    T = "t"
    F = "f"
    B = "b"
    N = "n"

    @property
    def pair(self) -> Tuple[int, int]:
        return _PAIRS[self]

    @classmethod
    def of_pair(cls, truth: int, falsity: int) -> "FourValue":
        return _BY_PAIR[(truth, falsity)]


_PAIRS = {FourValue.T: (1, 0), FourValue.F: (0, 1), FourValue.B: (1, 1), FourValue.N: (0, 0)}
_BY_PAIR = {pair: value for value, pair in _PAIRS.items()}

# classical corners first
FOUR_ORDER = (FourValue.T, FourValue.F, FourValue.B, FourValue.N)


def leq4(x: FourValue, y: FourValue) -> bool:
    (a1, a2), (b1, b2) = x.pair, y.pair
    return a1 <= b1 and a2 >= b2


def meet4(x: FourValue, y: FourValue) -> FourValue:
    (a1, a2), (b1, b2) = x.pair, y.pair
    return FourValue.of_pair(min(a1, b1), max(a2, b2))


def join4(x: FourValue, y: FourValue) -> FourValue:
    (a1, a2), (b1, b2) = x.pair, y.pair
    return FourValue.of_pair(max(a1, b1), min(a2, b2))


def neg4(x: FourValue) -> FourValue:
    a1, a2 = x.pair
    return FourValue.of_pair(a2, a1)


def _check_layer(f: Formula):
    if f.lang not in BD_LAYER:
        raise LanguageError(f.lang.value, "bd", f"BD semantics needs a BD formula, got {f.lang.value}")


def four_eval(v: Mapping[str, FourValue], f: Formula) -> FourValue:
    _check_layer(f)
    return _four(v, f)


def _four(v, f: Formula) -> FourValue:
    k = f.kind
    if k == Kind.VAR:
        try:
            return FourValue(v[f.var])
        except KeyError:
            raise UnboundVariableError(f.var) from None
    if k == Kind.NEG:
        return neg4(_four(v, f.children[0]))
    if k == Kind.AND:
        return meet4(_four(v, f.left), _four(v, f.right))
    if k == Kind.OR:
        return join4(_four(v, f.left), _four(v, f.right))
    raise LanguageError(f.lang.value, SYMBOL[k])


# ---------------- models ----------------
def truth_sets(m: BDModel, f: Formula) -> Tuple[int, int]:
    """(|f|⁺, |f|⁻) as state masks."""
    _check_layer(f)
    return signed_extension(m.vplus, m.vminus, f)


def signed_extension(vplus: Mapping[str, int], vminus: Mapping[str, int], f: Formula) -> Tuple[int, int]:
    """Signed extension of a BD formula straight from v⁺ and v⁻."""
    k = f.kind
    if k == Kind.VAR:
        if f.var not in vplus and f.var not in vminus:
            raise UnboundVariableError(f.var)
        return vplus.get(f.var, 0), vminus.get(f.var, 0)
    if k == Kind.NEG:
        pos, neg = signed_extension(vplus, vminus, f.children[0])
        return neg, pos
    if k == Kind.AND:
        p1, n1 = signed_extension(vplus, vminus, f.left)
        p2, n2 = signed_extension(vplus, vminus, f.right)
        return p1 & p2, n1 | n2
    if k == Kind.OR:
        p1, n1 = signed_extension(vplus, vminus, f.left)
        p2, n2 = signed_extension(vplus, vminus, f.right)
        return p1 | p2, n1 & n2
    raise LanguageError(f.lang.value, SYMBOL[k])


def support(m: BDModel, s: int, f: Formula) -> Tuple[bool, bool]:
    m.check_state(s)
    pos, neg = truth_sets(m, f)
    return bool(pos >> s & 1), bool(neg >> s & 1)


def sequent_valid_on_model(m: BDModel, phi: Formula, chi: Formula) -> bool:
    p1, n1 = truth_sets(m, phi)
    p2, n2 = truth_sets(m, chi)
    return p1 & ~p2 == 0 and n2 & ~n1 == 0


def four_valuations(names: Sequence[str]) -> Iterator[Dict[str, FourValue]]:
    for values in itertools.product(FOUR_ORDER, repeat=len(names)):
        yield dict(zip(names, values))


def bd_entails(phi: Formula, chi: Formula) -> Verdict:
    """Decide φ ⊢ χ in the four-element lattice: valid iff v(φ) ≤₄ v(χ) for every v."""
    _check_layer(phi)
    _check_layer(chi)
    names = sorted(variables(phi) | variables(chi))
    visited = 0
    for v in four_valuations(names):
        visited += 1
        if not leq4(_four(v, phi), _four(v, chi)):
            logger.debug("bd_entails: refuted after %d valuations", visited)
            return Verdict.refuted(witness=v)
    logger.debug("bd_entails: valid over %d valuations", visited)
    return Verdict.ok()


def single_point_counterpart(v: Mapping[str, FourValue]) -> BDModel:
    vplus = {p: 1 if FourValue(x).pair[0] else 0 for p, x in v.items()}
    vminus = {p: 1 if FourValue(x).pair[1] else 0 for p, x in v.items()}
    return BDModel(1, vplus, vminus)


def bd_models(states: int, names: Sequence[str]) -> Iterator[BDModel]:
    subsets = range(1 << states)
    for choice in itertools.product(subsets, repeat=2 * len(names)):
        vplus = dict(zip(names, choice[: len(names)]))
        vminus = dict(zip(names, choice[len(names):]))
        yield BDModel(states, vplus, vminus)


def find_countermodel(phi: Formula, chi: Formula, max_states: int = 2) -> Optional[BDModel]:
    """Smallest model (by state count) on which φ ⊢ χ fails, if any within the bound."""
    names = sorted(variables(phi) | variables(chi))
    for n in range(1, max_states + 1):
        for m in bd_models(n, names):
            if not sequent_valid_on_model(m, phi, chi):
                return m
    return None
