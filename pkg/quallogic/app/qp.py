# quallogic/app/qp.py
"""Gärdenfors models, the SIF translation into QG and order representability."""
import itertools
import logging
import random
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from quallogic.app.config import MAX_KPS_M, MAX_LP_STATES
from quallogic.app.errors import BoundError, LanguageError, NotSifError, OrderError, UnboundVariableError
from quallogic.app.measures import probability_measure
from quallogic.app.models import GardenforsModel, MeasureWitness, OrderInstance, UncertaintyModel, Verdict
from quallogic.app.simplex import OPTIMAL, maximize
from quallogic.app.syntax import (
    SYMBOL, Formula, Kind, Lang, conj_all, const, disj_all, expand, is_sif, modal,
    node, print_formula, retag, var,
)
from quallogic.utils import states_of, subset_key

logger = logging.getLogger(__name__)


# ---------------- semantics ----------------
def qp_extension(m: GardenforsModel, f: Formula) -> int:
    """‖f‖ as a state mask; comparisons may nest to any depth."""
    k = f.kind
    full = m.full
    if k == Kind.VAR:
        try:
            return m.v[f.var]
        except KeyError:
            raise UnboundVariableError(f.var) from None
    if k == Kind.TOP:
        return full
    if k == Kind.BOT:
        return 0
    if k == Kind.NOT:
        return full & ~qp_extension(m, f.children[0])
    if k == Kind.LEQ:
        a, b = qp_extension(m, f.left), qp_extension(m, f.right)
        mask = 0
        for x in range(m.states):
            if m.probability(x, a) <= m.probability(x, b):
                mask |= 1 << x
        return mask
    if k in (Kind.AND, Kind.OR, Kind.MIMP, Kind.EQUIV):
        a, b = qp_extension(m, f.left), qp_extension(m, f.right)
        if k == Kind.AND:
            return a & b
        if k == Kind.OR:
            return a | b
        if k == Kind.MIMP:
            return (full & ~a) | b
        return full & ~(a ^ b)
    if k in (Kind.APPROX, Kind.LESS):
        return qp_extension(m, expand(f))
    raise LanguageError(f.lang.value, SYMBOL[k])


def _check_qp(f: Formula):
    if f.lang != Lang.QP:
        raise LanguageError(f.lang.value, "QP", f"Gärdenfors models read QP formulas, got {f.lang.value}")


def qp_sat(m: GardenforsModel, x: int, f: Formula) -> bool:
    _check_qp(f)
    m.check_state(x)
    return bool(qp_extension(m, f) >> x & 1)


def qp_true(m: GardenforsModel, f: Formula) -> bool:
    _check_qp(f)
    return qp_extension(m, f) == m.full


def g_counterpart(m: GardenforsModel, x: int) -> UncertaintyModel:
    """Same states and valuation, with μ := P_x."""
    m.check_state(x)
    return UncertaintyModel(m.states, dict(m.v), probability_measure(m.weights[x]))


def random_gardenfors_model(rng: random.Random, states: int, variables: Sequence[str],
                            denominator: int = 4) -> GardenforsModel:
    """Seeded model with every P_x weighing states by multiples of 1/total."""
    rows = []
    for _ in range(states):
        raw = [rng.randint(0, denominator) for _ in range(states)]
        if not any(raw):
            raw[rng.randrange(states)] = 1
        total = sum(raw)
        rows.append(tuple(Fraction(w, total) for w in raw))
    v = {p: rng.randrange(1 << states) for p in variables}
    return GardenforsModel(states, tuple(rows), v)


# ---------------- translation ----------------
def _belief(chi: Formula) -> Formula:
    return modal(retag(chi, Lang.CPL), Lang.QG)


def comparison(chi: Formula, chi2: Formula) -> Formula:
    """△(Bχ →G Bχ′)."""
    return node(Kind.DELTA, node(Kind.IMP, _belief(chi), _belief(chi2)))


def translate_sif(f: Formula) -> Formula:
    if not is_sif(f):
        raise NotSifError(f"{print_formula(f)} is not a simple inequality formula")
    return _translate(f)


def _translate(f: Formula) -> Formula:
    k = f.kind
    if k == Kind.LEQ:
        return comparison(f.left, f.right)
    if k in (Kind.APPROX, Kind.LESS):
        return _translate(expand(f))
    if k == Kind.NOT:
        return node(Kind.SNOT, _translate(f.children[0]))
    if k in (Kind.AND, Kind.OR):
        return node(k, _translate(f.left), _translate(f.right))
    if k == Kind.MIMP:
        return node(Kind.IMP, _translate(f.left), _translate(f.right))
    # EQUIV: ↔G agrees with ≡ on {0, 1}
    return node(Kind.IFF, _translate(f.left), _translate(f.right))


# ---------------- E-notation and axiom instances ----------------
def _check_lists(phis: Sequence[Formula], chis: Sequence[Formula]):
    if not phis or len(phis) != len(chis):
        raise BoundError(f"E-notation needs two non-empty lists of equal length, got {len(phis)} and {len(chis)}")


def balance_disjunction(phis: Sequence[Formula], chis: Sequence[Formula], lang: Lang) -> Formula:
    """⋁ over K, L ⊆ M with |K| = |L| of the conjunction negating exactly the members in K and L."""
    _check_lists(phis, chis)
    lang = Lang(lang)
    phis = [retag(f, lang) for f in phis]
    chis = [retag(f, lang) for f in chis]
    indices = range(len(phis))
    disjuncts = []
    for i in range(len(phis) + 1):
        for big_k in itertools.combinations(indices, i):
            for big_l in itertools.combinations(indices, i):
                lits = [node(Kind.NOT, f) if j in big_k else f for j, f in enumerate(phis)]
                lits += [node(Kind.NOT, f) if j in big_l else f for j, f in enumerate(chis)]
                disjuncts.append(conj_all(lits))
    return disj_all(disjuncts)


def e_notation(phis: Sequence[Formula], chis: Sequence[Formula]) -> Formula:
    """φ₁..φ_m E χ₁..χ_m as a QP formula: (⋁…) ≈ ⊤."""
    return node(Kind.APPROX, balance_disjunction(phis, chis, Lang.QP), const(Kind.TOP, Lang.QP))


def e_g_notation(phis: Sequence[Formula], chis: Sequence[Formula]) -> Formula:
    """φ₀..φ_m E_G χ₀..χ_m as a QG formula: △(B(⋁…) ↔G B⊤)."""
    inner = balance_disjunction(phis, chis, Lang.CPL)
    return node(Kind.DELTA, node(Kind.IFF, modal(inner, Lang.QG), modal(const(Kind.TOP, Lang.CPL), Lang.QG)))


def _check_m(m: int, given: int, wanted: int):
    if not 0 <= m <= MAX_KPS_M:
        raise BoundError(f"schema index must lie in 0..{MAX_KPS_M}, got {m}")
    if given != wanted:
        raise BoundError(f"index {m} needs {wanted} formulas per side, got {given}")


def a4_instance(m: int, phis: Sequence[Formula], psis: Sequence[Formula]) -> Formula:
    """(φ₁..φ_m E ψ₁..ψ_m) ∧ ⋀_{i<m} φᵢ≲ψᵢ ⊃ ψ_m≲φ_m."""
    if m < 1:
        raise BoundError("(A4)_m starts at m = 1")
    _check_m(m, len(phis), m)
    _check_m(m, len(psis), m)
    phis = [retag(f, Lang.QP) for f in phis]
    psis = [retag(f, Lang.QP) for f in psis]
    premise = conj_all([e_notation(phis, psis)] + [node(Kind.LEQ, a, b) for a, b in zip(phis[:-1], psis[:-1])])
    return node(Kind.MIMP, premise, node(Kind.LEQ, psis[-1], phis[-1]))


def kps_instance(m: int, phis: Sequence[Formula], chis: Sequence[Formula]) -> Formula:
    """KPS_m over the pairs (φ₀, χ₀) .. (φ_m, χ_m)."""
    _check_m(m, len(phis), m + 1)
    _check_m(m, len(chis), m + 1)
    premise = conj_all([e_g_notation(phis, chis)] + [comparison(a, b) for a, b in zip(phis[:-1], chis[:-1])])
    return node(Kind.IMP, premise, comparison(chis[-1], phis[-1]))


# ---------------- axioms on a model ----------------
def _axiom_pool(names: Sequence[str]) -> List[Formula]:
    pool = [const(Kind.TOP, Lang.QP), const(Kind.BOT, Lang.QP)]
    for p in names:
        pool += [var(p, Lang.QP), node(Kind.NOT, var(p, Lang.QP))]
    return pool


def qp_axiom_instances(pool: Sequence[Formula], max_m: int = 2) -> Iterable[Tuple[str, Formula]]:
    top, bot = const(Kind.TOP, Lang.QP), const(Kind.BOT, Lang.QP)
    yield "A3", node(Kind.LESS, bot, top)
    for a in pool:
        yield "A1", node(Kind.LEQ, bot, a)
    for a, b in itertools.product(pool, repeat=2):
        yield "A2", node(Kind.OR, node(Kind.LEQ, a, b), node(Kind.LEQ, b, a))
    for a1, a2, b1, b2 in itertools.product(pool, repeat=4):
        same = node(Kind.AND, node(Kind.APPROX, node(Kind.EQUIV, a1, a2), top),
                    node(Kind.APPROX, node(Kind.EQUIV, b1, b2), top))
        yield "A0", node(Kind.MIMP, same, node(Kind.EQUIV, node(Kind.LEQ, a1, b1), node(Kind.LEQ, a2, b2)))
    for m in range(1, max_m + 1):
        for combo in itertools.product(pool, repeat=2 * m):
            yield f"A4_{m}", a4_instance(m, combo[:m], combo[m:])


def check_qp_axioms(m: GardenforsModel, formulas: Optional[Sequence[Formula]] = None,
                    max_m: int = 2) -> Verdict:
    """Every (A0)-(A3) and (A4)_m instance over the pool must be true in m.

    The default pool is ⊤, ⊥ and the literals of the model's variables.
    """
    pool = list(formulas) if formulas is not None else _axiom_pool(sorted(m.v))
    checked = 0
    for name, f in qp_axiom_instances(pool, max_m):
        checked += 1
        bad = m.full & ~qp_extension(m, f)
        if bad:
            logger.debug("check_qp_axioms: %s fails after %d instances", name, checked)
            return Verdict.refuted(witness={"axiom": name, "instance": print_formula(f),
                                            "state": states_of(bad)[0]})
    logger.debug("check_qp_axioms: %d instances true", checked)
    return Verdict.ok(note=f"{checked} instances")


# ---------------- representability ----------------
Pair = Tuple[int, int]


def order_constraints(order: OrderInstance) -> Tuple[List[Pair], List[Pair]]:
    """(strict, equal) pairs pinning the order down: ties to a level representative, consecutive levels strictly."""
    levels: Dict[int, List[int]] = {}
    for mask, r in enumerate(order.rank):
        levels.setdefault(r, []).append(mask)
    reps = []
    equal = []
    for r in sorted(levels):
        members = levels[r]
        reps.append(members[0])
        equal += [(members[0], other) for other in members[1:]]
    strict = list(zip(reps, reps[1:]))
    return strict, equal


def _indicator(n: int, mask: int) -> List[Fraction]:
    return [Fraction(mask >> i & 1) for i in range(n)]


def represent_order_lp(order: OrderInstance, strict: Sequence[Pair] = (),
                       equal: Sequence[Pair] = ()) -> Optional[MeasureWitness]:
    """A probability measure agreeing with the order, or None.

    Maximizes the slack ε in μ(X) + ε ≤ μ(Y) over the strict pairs, capped at
    1; extra strict and equal pairs (as subset masks) may be added. A
    witness exists iff the optimum ε is positive.
    """
    n = order.states
    if n > MAX_LP_STATES:
        raise BoundError(f"order representability supports at most {MAX_LP_STATES} states, got {n}")
    for x, y in list(strict) + list(equal):
        if max(x, y) >> n:
            raise OrderError(f"constraint {subset_key(x)}, {subset_key(y)} mentions a state outside 0..{n - 1}")
    base_strict, base_equal = order_constraints(order)
    strict = base_strict + list(strict)
    equal = base_equal + list(equal)
    # columns: w_0..w_{n-1}, ε, t, one slack per strict pair
    width = n + 2 + len(strict)
    eps, cap = n, n + 1

    def row() -> List[Fraction]:
        return [Fraction(0)] * width

    a_eq, b_eq = [], []
    total = row()
    total[:n] = [Fraction(1)] * n
    a_eq.append(total)
    b_eq.append(Fraction(1))
    for x, y in equal:
        r = row()
        r[:n] = [a - b for a, b in zip(_indicator(n, x), _indicator(n, y))]
        a_eq.append(r)
        b_eq.append(Fraction(0))
    for j, (x, y) in enumerate(strict):
        r = row()
        r[:n] = [b - a for a, b in zip(_indicator(n, x), _indicator(n, y))]
        r[eps] = Fraction(-1)
        r[n + 2 + j] = Fraction(-1)
        a_eq.append(r)
        b_eq.append(Fraction(0))
    r = row()
    r[eps] = r[cap] = Fraction(1)
    a_eq.append(r)
    b_eq.append(Fraction(1))

    cost = row()
    cost[eps] = Fraction(1)
    result = maximize(cost, a_eq, b_eq)
    logger.debug("represent_order_lp: %d strict, %d equal constraints -> %s", len(strict), len(equal), result.status)
    if result.status != OPTIMAL or result.value <= 0:
        return None
    witness = MeasureWitness(tuple(result.x[:n]), result.value)
    if not verify_witness(witness, strict, equal):
        raise AssertionError("simplex returned a point violating its own constraints")
    return witness


def verify_witness(witness: MeasureWitness, strict: Sequence[Pair], equal: Sequence[Pair]) -> bool:
    """Recompute every constraint from the weights alone."""
    if any(w < 0 for w in witness.weights) or sum(witness.weights) != 1 or witness.epsilon <= 0:
        return False
    mu = witness.measure
    return (all(mu(x) + witness.epsilon <= mu(y) for x, y in strict)
            and all(mu(x) == mu(y) for x, y in equal))


def agrees(witness: MeasureWitness, order: OrderInstance) -> bool:
    """X ≼ Y iff P(X) ≤ P(Y), for every pair of subsets."""
    size = 1 << order.states
    values = [witness.measure(x) for x in range(size)]
    return all((order.rank[x] <= order.rank[y]) == (values[x] <= values[y])
               for x in range(size) for y in range(size))


def qp_counterpart(m: UncertaintyModel) -> Optional[Tuple[GardenforsModel, int]]:
    """A pointed Gärdenfors model whose every P_x orders events like μ, or None."""
    witness = represent_order_lp(OrderInstance.from_measure(m.states, m.mu))
    if witness is None:
        return None
    rows = tuple(witness.weights for _ in range(m.states))
    return GardenforsModel(m.states, rows, dict(m.v)), 0
