# quallogic/app/kripke.py
"""G² Kripke models over finite chains, and their algebraic counterparts."""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

from quallogic.app.algebra import TwistValue
from quallogic.app.errors import LanguageError, UnboundVariableError
from quallogic.app.models import KripkeModel, Verdict
from quallogic.app.syntax import Formula, Kind, Lang, ORD_FAMILY, NEL_FAMILY, SYMBOL, expand, variables
from quallogic.utils import popcount, states_of

logger = logging.getLogger(__name__)

_G2 = ORD_FAMILY | NEL_FAMILY


class _Frame:
    """Per-state cones of a model, precomputed once per evaluation."""

    def __init__(self, m: KripkeModel):
        self.full = m.full
        self.above = [m.above(s) for s in range(m.states)]
        self.below = [m.below(s) for s in range(m.states)]

    def all_above(self, cond: int) -> int:
        return _collect(s for s, cone in enumerate(self.above) if cone & ~cond == 0)

    def all_below(self, cond: int) -> int:
        return _collect(s for s, cone in enumerate(self.below) if cone & ~cond == 0)

    def some_below(self, cond: int) -> int:
        return _collect(s for s, cone in enumerate(self.below) if cone & cond)


def _collect(states: Iterator[int]) -> int:
    mask = 0
    for s in states:
        mask |= 1 << s
    return mask


def _sets(fr: _Frame, m: KripkeModel, f: Formula, printed: bool) -> Tuple[int, int]:
    k = f.kind
    full = fr.full
    if k == Kind.VAR:
        if f.var not in m.vplus and f.var not in m.vminus:
            raise UnboundVariableError(f.var)
        return m.vplus.get(f.var, 0), m.vminus.get(f.var, 0)
    if k == Kind.TOP:
        return full, 0
    if k == Kind.BOT:
        return 0, full
    if k == Kind.NEG:
        pos, neg = _sets(fr, m, f.children[0], printed)
        return neg, pos
    if k in (Kind.AND, Kind.OR, Kind.IMP, Kind.COIMP, Kind.NIMP, Kind.NCOIMP):
        p1, n1 = _sets(fr, m, f.left, printed)
        p2, n2 = _sets(fr, m, f.right, printed)
        if k == Kind.AND:
            return p1 & p2, n1 | n2
        if k == Kind.OR:
            return p1 | p2, n1 & n2
        if k == Kind.IMP:
            return fr.all_above((full & ~p1) | p2), fr.some_below(n2 & ~n1)
        if k == Kind.COIMP:
            if printed:
                neg = fr.all_below(n1 | (full & ~n2))
            else:
                neg = fr.all_above((full & ~n2) | n1)
            return fr.some_below(p1 & ~p2), neg
        if k == Kind.NIMP:
            return fr.all_above((full & ~p1) | p2), p1 & n2
        return fr.some_below(p1 & ~p2), n1 | p2
    if k in (Kind.NOT, Kind.MIMP, Kind.LEQ, Kind.B, Kind.C):
        raise LanguageError(f.lang.value, SYMBOL[k])
    return _sets(fr, m, expand(f), printed)


def truth_sets(m: KripkeModel, f: Formula, printed_coimplication: bool = False) -> Tuple[int, int]:
    """(|f|⁺, |f|⁻) as state masks.

    The falsity clause of ⥪ quantifies over s′ ≽ s by default, which keeps
    support upward closed; printed_coimplication=True quantifies over s′ ≼ s.
    """
    if f.lang not in _G2:
        raise LanguageError(f.lang.value, "kripke", f"Kripke semantics needs a G² formula, got {f.lang.value}")
    return _sets(_Frame(m), m, f, printed_coimplication)


def ksupport(m: KripkeModel, s: int, f: Formula, printed_coimplication: bool = False) -> Tuple[bool, bool]:
    m.check_state(s)
    pos, neg = truth_sets(m, f, printed_coimplication)
    return bool(pos >> s & 1), bool(neg >> s & 1)


def kglobal(m: KripkeModel, f: Formula, printed_coimplication: bool = False) -> Tuple[bool, bool]:
    """Global support: (M ⊨⁺ f, M ⊨⁻ f), i.e. at every state."""
    pos, neg = truth_sets(m, f, printed_coimplication)
    return pos == m.full, neg == m.full


# ---------------- bounded search ----------------
def chain_upsets(n: int) -> List[int]:
    """Up-sets of the identity-ranked n-chain, smallest first."""
    full = (1 << n) - 1
    return [full & ~((1 << (n - size)) - 1) for size in range(n + 1)]


def chain_models(n: int, names: Sequence[str]) -> Iterator[KripkeModel]:
    """Every model on the n-chain; every finite linear frame is isomorphic to one of these."""
    upsets = chain_upsets(n)
    rank = tuple(range(n))
    for choice in itertools.product(upsets, repeat=2 * len(names)):
        yield KripkeModel(n, rank, dict(zip(names, choice[: len(names)])), dict(zip(names, choice[len(names):])))


def kentails(gamma: Sequence[Formula], f: Formula, max_states: int = 3,
             printed_coimplication: bool = False) -> Verdict:
    """Local entailment: every state supporting Γ positively supports f. Exact only up to the bound."""
    gamma = list(gamma)
    names = sorted(set().union(*(variables(g) for g in gamma + [f])))
    visited = 0
    for n in range(1, max_states + 1):
        for m in chain_models(n, names):
            visited += 1
            fr = _Frame(m)
            premises = m.full
            for g in gamma:
                premises &= _sets(fr, m, g, printed_coimplication)[0]
            bad = premises & ~_sets(fr, m, f, printed_coimplication)[0]
            if bad:
                logger.debug("kentails: refuted after %d models", visited)
                return Verdict.refuted(witness={"state": states_of(bad)[0]}, model=m)
    logger.debug("kentails: no countermodel among %d models up to %d states", visited, max_states)
    return Verdict.ok(note=f"no countermodel with at most {max_states} states")


def persistence_report(formulas: Sequence[Formula], max_states: int = 3) -> Dict[str, int]:
    """Count models on which support fails to be upward closed, under both ⥪ readings."""
    report = {"models": 0, "upward": 0, "printed": 0}
    for f in formulas:
        names = sorted(variables(f))
        for n in range(1, max_states + 1):
            for m in chain_models(n, names):
                report["models"] += 1
                for key, printed in (("upward", False), ("printed", True)):
                    pos, neg = truth_sets(m, f, printed)
                    if m.up(pos) != pos or m.up(neg) != neg:
                        report[key] += 1
    return report


# ---------------- counterparts ----------------
def valuation_to_model(e: Mapping[str, TwistValue]) -> KripkeModel:
    """A chain model whose up-sets order like the coordinates of e.

    The chain has one state more than there are distinct coordinate values; a
    value x becomes the up-set of size 0 for x = 0, n for x = 1, and i for the
    i-th smallest interior value.
    """
    pairs = {p: tuple(TwistValue.of(v)) for p, v in e.items()}
    coordinates = {x for pair in pairs.values() for x in pair}
    interior = sorted(x for x in coordinates if 0 < x < 1)
    n = len(coordinates) + 1
    size = {Fraction(0): 0, Fraction(1): n}
    size.update({x: i for i, x in enumerate(interior, start=1)})
    upsets = chain_upsets(n)
    vplus = {p: upsets[size[a]] for p, (a, b) in pairs.items()}
    vminus = {p: upsets[size[b]] for p, (a, b) in pairs.items()}
    return KripkeModel(n, tuple(range(n)), vplus, vminus)


@dataclass
class AlgebraicCounterpart:
    valuation: Dict[str, TwistValue]
    constraints: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"valuation": {p: v.to_json() for p, v in self.valuation.items()},
                "constraints": self.constraints}


def model_to_valuation(m: KripkeModel) -> AlgebraicCounterpart:
    """Order constraints an algebraic counterpart must meet, and the solution e(p) = |v(p)| / |W|."""
    names = sorted(set(m.vplus) | set(m.vminus))
    sets = {}
    for p in names:
        sets[f"v1({p})"] = m.vplus.get(p, 0)
        sets[f"v2({p})"] = m.vminus.get(p, 0)
    constraints = []
    for label, mask in sets.items():
        if mask == m.full:
            constraints.append(f"{label} = 1")
        elif mask == 0:
            constraints.append(f"{label} = 0")
    for (l1, a), (l2, b) in itertools.permutations(sets.items(), 2):
        if a & ~b == 0:
            constraints.append(f"{l1} <= {l2}")
    valuation = {p: TwistValue(Fraction(popcount(m.vplus.get(p, 0)), m.states),
                               Fraction(popcount(m.vminus.get(p, 0)), m.states)) for p in names}
    return AlgebraicCounterpart(valuation, constraints)
