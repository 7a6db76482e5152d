# quallogic/app/decide.py
"""Decision procedures for biG, both G² entailments, and QG entailment.

biG and G² values only matter up to their order relative to each other and
to the endpoints, so a query is decided either on a finite grid or on the
order types themselves.
"""
import itertools
import logging
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from quallogic.app.algebra import ONE, TwistValue, big_value, g2_family, g2_pair
from quallogic.app.classical import cpl_valid
from quallogic.app.config import MAX_ORDER_COORDS, settings
from quallogic.app.errors import BoundError, LanguageError
from quallogic.app.models import Verdict
from quallogic.app.syntax import (
    GODEL_FAMILY, Formula, Kind, Lang, atom_key, atoms, const, modal, modal_atoms, node,
)

logger = logging.getLogger(__name__)

GRID = "grid"
ORDERS = "orders"


def grid_values(d: int) -> List[Fraction]:
    """{0, 1/d, ..., 1}, endpoints first."""
    if d < 1:
        raise BoundError(f"grid denominator must be at least 1, got {d}")
    return [Fraction(0), Fraction(1)] + [Fraction(i, d) for i in range(1, d)]


def _weak_orders(items: Sequence[int]) -> Iterator[List[Tuple[int, ...]]]:
    if not items:
        yield []
        return
    for r in range(1, len(items) + 1):
        for block in itertools.combinations(items, r):
            rest = [i for i in items if i not in block]
            for tail in _weak_orders(rest):
                yield [block] + tail


def order_types(n: int) -> Iterator[Tuple[Tuple[int, ...], int]]:
    """Every weak ordering of n values relative to 0 and 1.

    Yields (levels, top): value i sits at integer level levels[i] in the chain 0..top.
    """
    for ends in itertools.product((0, 1, 2), repeat=n):
        interior = [i for i, end in enumerate(ends) if end == 2]
        for blocks in _weak_orders(interior):
            top = len(blocks) + 1
            levels = [0 if end == 0 else top for end in ends]
            for j, block in enumerate(blocks, start=1):
                for i in block:
                    levels[i] = j
            yield tuple(levels), top


def g2_order_types(keys: Sequence[str]) -> Iterator[Tuple[Dict[str, Tuple[int, int]], int]]:
    """Order types of the 2k twist coordinates, read back as level pairs per key."""
    for levels, top in order_types(2 * len(keys)):
        yield {k: (levels[2 * i], levels[2 * i + 1]) for i, k in enumerate(keys)}, top


def _keys(formulas: Iterable[Formula]) -> List[str]:
    return sorted({atom_key(a) for f in formulas for a in atoms(f)})


def _check_budget(count: int):
    if count > settings.max_grid_valuations:
        raise BoundError(f"{count} grid valuations exceed the limit of {settings.max_grid_valuations}; "
                         f"use the order-type strategy or fewer atoms")


# ---------------- biG ----------------
def big_refutes(gamma: Sequence[Formula], f: Formula, e, top) -> bool:
    c = big_value(f, e, top)
    if c == top:
        return False
    return all(big_value(g, e, top) > c for g in gamma)


def big_entails(gamma: Sequence[Formula], f: Formula, strategy: str = GRID,
                grid: Optional[int] = None) -> Verdict:
    """Γ ⊨ f in biG: inf e(Γ) ≤ e(f) for every valuation (inf ∅ = 1)."""
    gamma = list(gamma)
    for g in gamma + [f]:
        if g.lang not in GODEL_FAMILY:
            raise LanguageError(g.lang.value, "biG", f"biG entailment needs BIG or QG formulas, got {g.lang.value}")
    keys = _keys(gamma + [f])
    visited = 0
    if strategy == ORDERS:
        for levels, top in order_types(len(keys)):
            visited += 1
            e = dict(zip(keys, levels))
            if big_refutes(gamma, f, e, top):
                logger.debug("big_entails: refuted by order type after %d candidates", visited)
                return Verdict.refuted(witness={k: Fraction(l, top) for k, l in e.items()})
    else:
        values = grid_values(grid or len(keys) + 1)
        _check_budget(len(values) ** len(keys))
        for combo in itertools.product(values, repeat=len(keys)):
            visited += 1
            e = dict(zip(keys, combo))
            if big_refutes(gamma, f, e, ONE):
                logger.debug("big_entails: refuted after %d grid valuations", visited)
                return Verdict.refuted(witness=e)
    logger.debug("big_entails: holds, %d candidates visited (%s)", visited, strategy)
    return Verdict.ok()


def big_valid(f: Formula, strategy: str = GRID, grid: Optional[int] = None) -> Verdict:
    return big_entails([], f, strategy, grid)


# ---------------- G² ----------------
def g2_refutes(variant: Lang, gamma: Sequence[Formula], f: Formula, e, top) -> bool:
    c1, c2 = g2_pair(f, e, top)
    values = [g2_pair(g, e, top) for g in gamma]
    inf1 = min((v[0] for v in values), default=top)
    if inf1 > c1:
        return True
    if variant == Lang.G2ORD:
        sup2 = max((v[1] for v in values), default=0 * top)
        return sup2 < c2
    return False


def g2_entails(variant: Lang, gamma: Sequence[Formula], f: Formula, strategy: str = GRID,
               grid: Optional[int] = None) -> Verdict:
    """Γ ⊨ f in G²: truth infimum below the conclusion, and for G2ORD falsity supremum above it."""
    variant = g2_family(variant)
    gamma = list(gamma)
    for g in gamma + [f]:
        if g2_family(g.lang) != variant:
            raise LanguageError(g.lang.value, variant.value,
                                f"formula of {g.lang.value} does not belong to {variant.value}")
    keys = _keys(gamma + [f])
    visited = 0
    if strategy == ORDERS:
        for e, top in g2_order_types(keys):
            visited += 1
            if g2_refutes(variant, gamma, f, e, top):
                logger.debug("g2_entails: refuted by order type after %d candidates", visited)
                return Verdict.refuted(witness={k: TwistValue(Fraction(a, top), Fraction(b, top))
                                                for k, (a, b) in e.items()})
    else:
        values = grid_values(grid or 2 * len(keys) + 1)
        _check_budget(len(values) ** (2 * len(keys)))
        for combo in itertools.product(values, repeat=2 * len(keys)):
            visited += 1
            e = {k: (combo[2 * i], combo[2 * i + 1]) for i, k in enumerate(keys)}
            if g2_refutes(variant, gamma, f, e, ONE):
                logger.debug("g2_entails: refuted after %d grid valuations", visited)
                return Verdict.refuted(witness={k: TwistValue(a, b) for k, (a, b) in e.items()})
    logger.debug("g2_entails: holds, %d candidates visited (%s)", visited, strategy)
    return Verdict.ok()


def entails(lang: Lang, gamma: Sequence[Formula], f: Formula, strategy: str = ORDERS) -> Verdict:
    """Entailment in the outer propositional logic of a language."""
    lang = Lang(lang)
    if lang in GODEL_FAMILY:
        return big_entails(gamma, f, strategy)
    return g2_entails(g2_family(lang), gamma, f, strategy)


def verify_verdict(verdict: Verdict, lang: Lang, gamma: Sequence[Formula], f: Formula) -> bool:
    """True iff the verdict's witness really refutes Γ ⊨ f."""
    if verdict.holds or verdict.witness is None:
        return False
    lang = Lang(lang)
    if lang in GODEL_FAMILY:
        return big_refutes(list(gamma), f, verdict.witness, ONE)
    e = {k: tuple(v) for k, v in verdict.witness.items()}
    return g2_refutes(g2_family(lang), list(gamma), f, e, ONE)


# ---------------- QG ----------------
def qg_saturation(formulas: Sequence[Formula]) -> List[Formula]:
    """reg and nontriv instances over the B-atoms of the formulas plus B⊤ and B⊥."""
    for g in formulas:
        if g.lang != Lang.QG:
            raise LanguageError(g.lang.value, "QG", f"QG entailment needs QG formulas, got {g.lang.value}")
    found = modal_atoms(formulas)
    for extra in (modal(const(Kind.TOP, Lang.CPL), Lang.QG), modal(const(Kind.BOT, Lang.CPL), Lang.QG)):
        if extra not in found:
            found.append(extra)
    inner = {a: a.children[0] for a in found}
    instances: List[Formula] = []
    for a, b in itertools.permutations(found, 2):
        if cpl_valid(node(Kind.MIMP, inner[a], inner[b], lang=Lang.CPL)):
            instances.append(node(Kind.IMP, a, b))
    tautologies = [a for a in found if cpl_valid(inner[a])]
    contradictions = [a for a in found if cpl_valid(node(Kind.NOT, inner[a], lang=Lang.CPL))]
    for a in tautologies:
        for b in contradictions:
            instances.append(node(Kind.SNOT, node(Kind.DELTA, node(Kind.IMP, a, b))))
    return instances


def qg_entails(xi: Sequence[Formula], alpha: Formula, strategy: str = ORDERS) -> Verdict:
    """Ξ ⊨ α over all uncertainty frames, via saturation with reg and nontriv."""
    xi = list(xi)
    extra = qg_saturation(xi + [alpha])
    logger.debug("qg_entails: %d saturation instances", len(extra))
    verdict = big_entails(xi + extra, alpha, strategy)
    if not verdict.holds:
        verdict.note = "countervaluation over B-atoms satisfying reg and nontriv"
    return verdict


# ---------------- mixed premises ----------------
def _designated(variant: Lang, value, top) -> bool:
    if variant == Lang.BIG:
        return value == top
    if variant == Lang.G2ORD:
        return value == (top, 0 * top)
    return value[0] == top


def mixed_entails(variant: Lang, global_: Sequence[Formula], local: Sequence[Formula], f: Formula) -> Verdict:
    """Local entailment of f from local, over the valuations that designate every global formula.

    Atoms are placed into a weak order one at a time, and a partial order is
    abandoned as soon as a fully placed global formula is not designated.
    """
    variant = Lang.BIG if Lang(variant) in GODEL_FAMILY else g2_family(variant)
    global_, local = list(global_), list(local)
    keys = _keys(global_ + local + [f])
    twist = variant != Lang.BIG
    value = g2_pair if twist else big_value

    def coords_of(g: Formula) -> List:
        found = _keys([g])
        return [(k, i) for k in found for i in (0, 1)] if twist else found

    needs = sorted(((coords_of(g), g) for g in global_), key=lambda item: len(item[0]))
    coords: List = []
    for need, _ in needs:
        coords += [c for c in need if c not in coords]
    for c in coords_of(f) + [c for g in local for c in coords_of(g)]:
        if c not in coords:
            coords.append(c)
    if len(coords) > MAX_ORDER_COORDS:
        raise BoundError(f"{len(coords)} atom coordinates exceed the order-type limit of {MAX_ORDER_COORDS}")
    position = {c: i for i, c in enumerate(coords)}
    ready: Dict[int, List[Formula]] = {}
    for need, g in needs:
        ready.setdefault(max((position[c] for c in need), default=-1), []).append(g)

    blocks: List[List] = [[], []]
    visited = 0

    def valuation():
        levels = {c: i for i, block in enumerate(blocks) for c in block}
        top = len(blocks) - 1
        if not twist:
            return levels, top
        return {k: (levels[(k, 0)], levels[(k, 1)]) for k in keys
                if (k, 0) in levels and (k, 1) in levels}, top

    def admissible(i: int) -> bool:
        if i not in ready:
            return True
        e, top = valuation()
        return all(_designated(variant, value(g, e, top), top) for g in ready[i])

    def place(i: int):
        nonlocal visited
        if i == len(coords):
            visited += 1
            e, top = valuation()
            bad = big_refutes(local, f, e, top) if not twist else g2_refutes(variant, local, f, e, top)
            return (e, top) if bad else None
        c = coords[i]
        for j in range(len(blocks)):
            blocks[j].append(c)
            found = place(i + 1) if admissible(i) else None
            blocks[j].pop()
            if found:
                return found
        for j in range(1, len(blocks)):
            blocks.insert(j, [c])
            found = place(i + 1) if admissible(i) else None
            del blocks[j]
            if found:
                return found
        return None

    found = place(0) if admissible(-1) else None
    logger.debug("mixed_entails: %d order types past the global filter", visited)
    if found is None:
        return Verdict.ok()
    e, top = found
    if twist:
        return Verdict.refuted(witness={k: TwistValue(Fraction(a, top), Fraction(b, top)) for k, (a, b) in e.items()})
    return Verdict.refuted(witness={k: Fraction(level, top) for k, level in e.items()})
