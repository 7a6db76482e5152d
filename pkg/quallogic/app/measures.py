# quallogic/app/measures.py
"""Two-layered models over measured frames.

A frame is a state count n together with a table mu indexed by subset
bitmask (mu[0] is μ(∅), mu[-1] is μ(W)). QG reads its B-atoms off a
classical valuation; MCB and NMCB read their C-atoms off the signed
extensions of a BD valuation.
"""
import itertools
import logging
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from quallogic.app.algebra import ONE, ZERO, TwistValue, eval_big, eval_g2, g2_family, unit
from quallogic.app.bd import signed_extension
from quallogic.app.classical import cpl_valid, extension
from quallogic.app.config import (
    MAX_FRAME_VARIABLES, MAX_KPS_CHECK_M, MAX_KPS_CHECK_STATES, MAX_MEASURE_STATES,
    MAX_SEARCH_GRID, MAX_SEARCH_STATES,
)
from quallogic.app.decide import big_refutes, g2_refutes
from quallogic.app.errors import BoundError, InconsistentValuationError, LanguageError, ModelError
from quallogic.app.models import BeliefModel, UncertaintyModel, Verdict, check_frame, table_json
from quallogic.app.syntax import (
    Formula, Kind, Lang, atom_key, modal, modal_atoms, node, parse, var, variables,
)
from quallogic.utils import full_mask, states_of

logger = logging.getLogger(__name__)

MEASURE_LAYERS = (Lang.QG, Lang.MCB, Lang.NMCB)
FRAME_FLAGS = ("monotone", "nontrivial", "capacity")
DEFAULT_FLAGS: Dict[Lang, Tuple[str, ...]] = {
    Lang.QG: ("monotone", "nontrivial"),
    Lang.MCB: ("monotone",),
    Lang.NMCB: ("monotone",),
}

Table = Sequence[Fraction]


def _layer(lang) -> Lang:
    lang = Lang(lang)
    if lang not in MEASURE_LAYERS:
        raise LanguageError(lang.value, "layer", f"{lang.value} is not a two-layered language")
    return lang


def _check_lang(f: Formula, layer: Lang):
    if f.lang != layer:
        raise LanguageError(f.lang.value, layer.value, f"formula of {f.lang.value} cannot be read in {layer.value}")


# ---------------- evaluation ----------------
def b_values(found: Iterable[Formula], v: Mapping[str, int], full: int, mu: Table) -> Dict[str, Fraction]:
    """e(Bφ) = μ(‖φ‖) for each B-atom."""
    return {atom_key(a): mu[extension(a.children[0], v, full)] for a in found}


def c_values(found: Iterable[Formula], vplus: Mapping[str, int], vminus: Mapping[str, int],
             pi: Table) -> Dict[str, Tuple[Fraction, Fraction]]:
    """e(Cφ) = (π(|φ|⁺), π(|φ|⁻)) for each C-atom."""
    out = {}
    for a in found:
        pos, neg = signed_extension(vplus, vminus, a.children[0])
        out[atom_key(a)] = (pi[pos], pi[neg])
    return out


def eval_qg(m: UncertaintyModel, f: Formula) -> Fraction:
    _check_lang(f, Lang.QG)
    return eval_big(f, b_values(modal_atoms([f]), m.v, m.full, m.mu))


def eval_layer(m: BeliefModel, variant: Lang, f: Formula) -> TwistValue:
    variant = _layer(variant)
    if variant == Lang.QG:
        raise LanguageError(variant.value, "eval-layer", "eval_layer reads MCB or NMCB formulas")
    _check_lang(f, variant)
    return eval_g2(variant, f, c_values(modal_atoms([f]), m.vplus, m.vminus, m.pi))


def _refutes(layer: Lang, xi: Sequence[Formula], alpha: Formula, e) -> bool:
    if layer == Lang.QG:
        return big_refutes(xi, alpha, e, ONE)
    return g2_refutes(g2_family(layer), xi, alpha, e, ONE)


# ---------------- measure conditions ----------------
def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _sets(**named: int) -> dict:
    return {name: states_of(mask) for name, mask in named.items()}


def _monotone(n: int, mu: Table) -> Optional[dict]:
    for x in range(1 << n):
        for i in range(n):
            if not x >> i & 1 and mu[x] > mu[x | 1 << i]:
                return _sets(X=x, Y=x | 1 << i)
    return None


def _nontrivial(n: int, mu: Table) -> Optional[dict]:
    full = full_mask(n)
    return None if mu[0] < mu[full] else _sets(X=full, Y=0)


def _capacity(n: int, mu: Table) -> Optional[dict]:
    full = full_mask(n)
    if mu[0] != 0:
        return _sets(X=0)
    if mu[full] != 1:
        return _sets(X=full)
    return _monotone(n, mu)


def _cond_i(n: int, mu: Table) -> Optional[dict]:
    full = full_mask(n)
    for x in range(1 << n):
        if (mu[x] == 1) != (mu[full & ~x] == 0):
            return _sets(X=x)
    return None


def _cond_ii(n: int, mu: Table) -> Optional[dict]:
    for y, y2 in itertools.product(range(1 << n), repeat=2):
        if mu[y & y2] == 0 and mu[y] > 0 and mu[y2] > 0:
            union = mu[y | y2]
            if not (union > mu[y] and union > mu[y2]):
                return {"Y": states_of(y), "Y'": states_of(y2)}
    return None


def _cond_iii(n: int, mu: Table) -> Optional[dict]:
    for y, y2 in itertools.product(range(1 << n), repeat=2):
        if mu[y] == 0 and mu[y | y2] != mu[y2]:
            return {"Y": states_of(y), "Y'": states_of(y2)}
    return None


def _mu_pm(n: int, mu: Table) -> Optional[dict]:
    full = full_mask(n)
    for y in range(1 << n):
        for x in _submasks(y):
            if x == y or not mu[x] < mu[y]:
                continue
            for z in _submasks(full & ~y):
                if mu[x | z] >= mu[y | z]:
                    return _sets(X=x, Y=y, Z=z)
    return None


def _quads(n: int) -> Iterator[Tuple[int, int, int, int]]:
    return itertools.product(range(1 << n), repeat=4)


def _mcb_i(n: int, pi: Table) -> Optional[dict]:
    # X, X' positive and Y, Y' negative extensions of p, p'
    for x, x2, y, y2 in _quads(n):
        premise = (pi[x & x2] == 0 and pi[y | y2] == 1
                   and (pi[x] != 0 or pi[y] != 1) and (pi[x2] != 0 or pi[y2] != 1))
        if not premise:
            continue
        grows = pi[x | x2] > pi[x] or pi[y & y2] < pi[y]
        grows2 = pi[x | x2] > pi[x2] or pi[y & y2] < pi[y2]
        if not (grows and grows2):
            return {"X": states_of(x), "X'": states_of(x2), "Y": states_of(y), "Y'": states_of(y2)}
    return None


def _mcb_ii(n: int, pi: Table) -> Optional[dict]:
    for x, x2, y, y2 in _quads(n):
        if pi[x] == 0 and pi[y] == 1 and not (pi[x | x2] == pi[x2] and pi[y & y2] == pi[y2]):
            return {"X": states_of(x), "X'": states_of(x2), "Y": states_of(y), "Y'": states_of(y2)}
    return None


def _mcb_iv(n: int, pi: Table) -> Optional[dict]:
    # ⇔ compares falsity too, so the negative half does not depend on π(Y)
    for x, x2, y, y2 in _quads(n):
        if pi[x] == 0 and not (pi[x | x2] == pi[x2] and pi[y & y2] == pi[y2]):
            return {"X": states_of(x), "X'": states_of(x2), "Y": states_of(y), "Y'": states_of(y2)}
    return None


def _kps(n: int, mu: Table, m: int) -> Optional[dict]:
    """First balanced family X_0..X_m, Y_0..Y_m with μ(X_j) ≤ μ(Y_j) for j < m but μ(X_m) < μ(Y_m).

    Each pair contributes its membership difference 1_X - 1_Y; the family is
    balanced iff the differences sum to zero. Breadth-first search over the
    sums reachable with at most m weak pairs, padding with (∅, ∅).
    """
    if n > MAX_KPS_CHECK_STATES:
        raise BoundError(f"muKPS checks support at most {MAX_KPS_CHECK_STATES} states, got {n}")
    if not 0 <= m <= MAX_KPS_CHECK_M:
        raise BoundError(f"muKPS index must lie in 0..{MAX_KPS_CHECK_M}, got {m}")

    def diff(x: int, y: int) -> Tuple[int, ...]:
        return tuple((x >> i & 1) - (y >> i & 1) for i in range(n))

    weak: Dict[Tuple[int, ...], Tuple[int, int]] = {}
    strict: Dict[Tuple[int, ...], Tuple[int, int]] = {}
    for x, y in itertools.product(range(1 << n), repeat=2):
        if mu[x] <= mu[y]:
            weak.setdefault(diff(x, y), (x, y))
            if mu[x] < mu[y]:
                strict.setdefault(diff(x, y), (x, y))

    zero = (0,) * n
    back: Dict[Tuple[int, ...], Optional[Tuple[Tuple[int, ...], Tuple[int, int]]]] = {zero: None}
    frontier = [zero]
    for _ in range(m):
        reached = []
        for vec in frontier:
            for d, pair in weak.items():
                total = tuple(a + b for a, b in zip(vec, d))
                if total not in back:
                    back[total] = (vec, pair)
                    reached.append(total)
        frontier = reached
    logger.debug("muKPS(%d): %d reachable sums", m, len(back))

    for d, last in strict.items():
        target = tuple(-a for a in d)
        if target not in back:
            continue
        pairs = []
        vec = target
        while back[vec] is not None:
            vec, pair = back[vec]
            pairs.append(pair)
        pairs.reverse()
        pairs += [(0, 0)] * (m - len(pairs))
        pairs.append(last)
        return {"X": [states_of(x) for x, _ in pairs], "Y": [states_of(y) for _, y in pairs]}
    return None


_CHECKS: Dict[str, Callable[[int, Table], Optional[dict]]] = {
    "monotone": _monotone,
    "nontrivial": _nontrivial,
    "capacity": _capacity,
    "cond_I": _cond_i,
    "cond_II": _cond_ii,
    "cond_III": _cond_iii,
    "muPM": _mu_pm,
    "mcb_I": _mcb_i,
    "mcb_II": _mcb_ii,
    "mcb_III": _cond_ii,
    "mcb_IV": _mcb_iv,
}
PROPERTIES = tuple(_CHECKS) + ("muKPS",)

_KPS_NAME = re.compile(r"^muKPS(?:\((\d+)\))?$")


def _split_property(prop: str, m: Optional[int]) -> Tuple[str, Optional[int]]:
    match = _KPS_NAME.match(prop)
    if match:
        if match.group(1) is not None:
            m = int(match.group(1))
        if m is None:
            raise ModelError("muKPS needs an index, e.g. muKPS(2)")
        return "muKPS", m
    if prop not in _CHECKS:
        raise ModelError(f"unknown property {prop!r}; known: {', '.join(PROPERTIES)}")
    return prop, None


def check_property(states: int, mu: Table, prop: str, m: Optional[int] = None) -> Verdict:
    """Exhaustively check a condition on a full measure table; a failure names the violating subsets."""
    check_frame(states, mu)
    name, m = _split_property(prop, m)
    if name == "muKPS":
        witness = _kps(states, mu, m)
    else:
        witness = _CHECKS[name](states, mu)
    if witness is None:
        return Verdict.ok()
    return Verdict.refuted(witness=witness, note=name if m is None else f"{name}({m})")


def probability_measure(weights: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Full table of the measure with the given point weights."""
    n = len(weights)
    if n > MAX_MEASURE_STATES:
        raise BoundError(f"{n} states exceed the measure limit of {MAX_MEASURE_STATES}")
    if any(w < 0 for w in weights) or sum(weights) != 1:
        raise ModelError("point weights must be non-negative and sum to 1")
    table = [ZERO] * (1 << n)
    for x in range(1, 1 << n):
        low = (x & -x).bit_length() - 1
        table[x] = table[x & (x - 1)] + weights[low]
    return tuple(table)


# ---------------- frames ----------------
def monotone_measures(n: int, grid: int, flags: Iterable[str] = ("monotone", "nontrivial")) -> Iterator[Tuple[Fraction, ...]]:
    """Measure tables with values in {0, 1/grid, ..., 1}, lexicographic by subset mask.

    monotone, nontrivial and capacity shape the enumeration; any other
    property name in flags filters it through check_property.
    """
    if n > MAX_MEASURE_STATES:
        raise BoundError(f"{n} states exceed the measure limit of {MAX_MEASURE_STATES}")
    if grid < 1:
        raise BoundError(f"grid denominator must be at least 1, got {grid}")
    flags = set(flags)
    capacity = "capacity" in flags
    monotone = "monotone" in flags or capacity
    extra = [f for f in flags if f not in FRAME_FLAGS]
    for f in extra:
        _split_property(f, 0)
    values = [Fraction(i, grid) for i in range(grid + 1)]
    size = 1 << n
    table: List[Fraction] = [ZERO] * size

    def fill(x: int) -> Iterator[Tuple[Fraction, ...]]:
        if x == size:
            yield tuple(table)
            return
        low = ZERO
        if monotone:
            low = max((table[x & ~(1 << i)] for i in range(n) if x >> i & 1), default=ZERO)
        for value in values:
            if value < low:
                continue
            if capacity and ((x == 0 and value != 0) or (x == size - 1 and value != 1)):
                continue
            table[x] = value
            yield from fill(x + 1)

    for mu in fill(0):
        if "nontrivial" in flags and not mu[0] < mu[-1]:
            continue
        if any(not check_property(n, mu, f).holds for f in extra):
            continue
        yield mu


def _valuations(layer: Lang, names: Sequence[str], found: Sequence[Formula], n: int,
                mu: Table) -> Iterator[Tuple[tuple, dict]]:
    full = full_mask(n)
    subsets = range(1 << n)
    if layer == Lang.QG:
        for choice in itertools.product(subsets, repeat=len(names)):
            v = dict(zip(names, choice))
            yield (v,), b_values(found, v, full, mu)
        return
    k = len(names)
    for choice in itertools.product(subsets, repeat=2 * k):
        vplus, vminus = dict(zip(names, choice[:k])), dict(zip(names, choice[k:]))
        yield (vplus, vminus), c_values(found, vplus, vminus, mu)


def _frame_model(layer: Lang, n: int, mu: Table, valuation: tuple):
    if layer == Lang.QG:
        return UncertaintyModel(n, valuation[0], tuple(mu))
    return BeliefModel(n, valuation[0], valuation[1], tuple(mu))


def _witness(layer: Lang, valuation: tuple) -> dict:
    if layer == Lang.QG:
        return {"v": {p: states_of(x) for p, x in sorted(valuation[0].items())}}
    return {"vplus": {p: states_of(x) for p, x in sorted(valuation[0].items())},
            "vminus": {p: states_of(x) for p, x in sorted(valuation[1].items())}}


def _names(formulas: Sequence[Formula]) -> List[str]:
    names = sorted(set().union(*(variables(f) for f in formulas)))
    if len(names) > MAX_FRAME_VARIABLES:
        raise BoundError(f"{len(names)} variables exceed the frame limit of {MAX_FRAME_VARIABLES}")
    return names


def frame_validates(states: int, mu: Table, f: Formula, layer: Optional[Lang] = None) -> Verdict:
    """Validity on ⟨W, μ⟩ over every inner valuation.

    QG and NMCB need value (truth coordinate) 1; MCB needs (1, 0).
    """
    layer = _layer(layer or f.lang)
    _check_lang(f, layer)
    check_frame(states, mu)
    names = _names([f])
    found = modal_atoms([f])
    visited = 0
    for valuation, e in _valuations(layer, names, found, states, mu):
        visited += 1
        if _refutes(layer, [], f, e):
            logger.debug("frame_validates: refuted after %d valuations", visited)
            return Verdict.refuted(witness=_witness(layer, valuation),
                                   model=_frame_model(layer, states, mu, valuation))
    logger.debug("frame_validates: valid over %d valuations", visited)
    return Verdict.ok()


def find_frame_countermodel(xi: Sequence[Formula], alpha: Formula, layer: Optional[Lang] = None,
                            flags: Optional[Iterable[str]] = None, max_states: int = MAX_SEARCH_STATES,
                            grid: int = MAX_SEARCH_GRID):
    """Smallest model refuting Ξ ⊨ α: by state count, then grid denominator, then μ lexicographically."""
    layer = _layer(layer or alpha.lang)
    xi = list(xi)
    for g in xi + [alpha]:
        _check_lang(g, layer)
    if max_states > MAX_SEARCH_STATES or grid > MAX_SEARCH_GRID:
        raise BoundError(f"search bounds ({max_states}, {grid}) exceed ({MAX_SEARCH_STATES}, {MAX_SEARCH_GRID})")
    flags = tuple(DEFAULT_FLAGS[layer] if flags is None else flags)
    names = _names(xi + [alpha])
    found = modal_atoms(xi + [alpha])
    frames = 0
    for n in range(1, max_states + 1):
        for d in range(1, grid + 1):
            for mu in monotone_measures(n, d, flags):
                # already visited on a coarser grid
                if math.lcm(*(x.denominator for x in mu)) < d:
                    continue
                frames += 1
                for valuation, e in _valuations(layer, names, found, n, mu):
                    if _refutes(layer, xi, alpha, e):
                        logger.debug("find_frame_countermodel: found after %d frames", frames)
                        return _frame_model(layer, n, mu, valuation)
    logger.debug("find_frame_countermodel: none among %d frames up to (%d, %d)", frames, max_states, grid)
    return None


# ---------------- named formulas ----------------
_NAMED: Dict[str, Tuple[Lang, str]] = {
    "1compl": (Lang.QG, "delta B(p) <-> snot B(~p)"),
    "disj+": (Lang.QG, "snot B(p & q) & snot snot B(p) & snot snot B(q)"
                       " -> snot delta (B(p | q) -> B(p)) & snot delta (B(p | q) -> B(q))"),
    "disj0": (Lang.QG, "snot B(p) -> delta (B(q) <-> B(p | q))"),
    "cap": (Lang.QG, "B(Top) & snot B(Bot)"),
    "disj+neg": (Lang.MCB, "delta1 snot C(p & q) & snot delta1 snot C(p) & snot delta1 snot C(q)"
                           " -> snot delta1 (C(p | q) -> C(p)) & snot delta1 (C(p | q) -> C(q))"),
    "disj0neg": (Lang.MCB, "delta1 snot C(p) -> delta1 (C(q) <-> C(p | q))"),
    "disj+N": (Lang.NMCB, "deltaN snot C(p & q) & snot snot C(p) & snot snot C(q)"
                          " ~> snot deltaN (C(p | q) ~> C(p)) & snot deltaN (C(p | q) ~> C(q))"),
    "disj0N": (Lang.NMCB, "deltaN snot C(p) ~> deltaN (C(q) <==> C(p | q))"),
}
NAMED_FORMULAS = tuple(_NAMED) + ("QBel",)


def qbel_instance(phi: Formula, chi: Formula, psi: Formula) -> Optional[Formula]:
    """∼G△(Bχ →G Bφ) →G ∼G△(B(χ∨ψ) →G B(φ∨ψ)), or None when the side conditions fail."""
    phi, chi, psi = (_cpl(x) for x in (phi, chi, psi))
    if not cpl_valid(node(Kind.MIMP, phi, chi)):
        return None
    if not cpl_valid(node(Kind.NOT, node(Kind.AND, chi, psi))):
        return None
    if cpl_valid(node(Kind.MIMP, chi, phi)):
        return None

    def strictly_below(lower: Formula, upper: Formula) -> Formula:
        b = node(Kind.IMP, modal(upper, Lang.QG), modal(lower, Lang.QG))
        return node(Kind.SNOT, node(Kind.DELTA, b))

    return node(Kind.IMP, strictly_below(phi, chi),
                strictly_below(node(Kind.OR, phi, psi), node(Kind.OR, chi, psi)))


def _cpl(f: Formula) -> Formula:
    if f.lang != Lang.CPL:
        raise LanguageError(f.lang.value, "QBel", "QBel instances take CPL formulas")
    return f


def _qbel_parts() -> Tuple[Formula, Formula, Formula]:
    p, q, r = (var(x, Lang.CPL) for x in "pqr")
    psi = node(Kind.AND, node(Kind.AND, node(Kind.NOT, p), node(Kind.NOT, q)), r)
    return p, node(Kind.OR, p, q), psi


@lru_cache(maxsize=None)
def named_formula(name: str) -> Formula:
    if name == "QBel":
        return qbel_instance(*_qbel_parts())
    try:
        lang, text = _NAMED[name]
    except KeyError:
        raise ModelError(f"unknown formula name {name!r}; known: {', '.join(NAMED_FORMULAS)}") from None
    return parse(lang, text)


def qbel_witness(states: int, mu: Table, x: int, y: int, z: int) -> Tuple[UncertaintyModel, Formula]:
    """A model where the QBel instance (p, p∨q, ∼p∧∼q∧r) takes value 0, from X ⊊ Y, Y ∩ Z = ∅ violating μPM."""
    if x & ~y or x == y:
        raise ModelError("QBel witness needs X to be a proper subset of Y")
    if y & z:
        raise ModelError("QBel witness needs Y and Z to be disjoint")
    v = {"p": x, "q": y & ~x, "r": z}
    return UncertaintyModel(states, v, tuple(mu)), named_formula("QBel")


# ---------------- correspondence ----------------
CORRESPONDENCES: Dict[str, Tuple[str, str]] = {
    "I": ("1compl", "cond_I"),
    "II": ("disj+", "cond_II"),
    "III": ("disj0", "cond_III"),
    "IV": ("cap", "capacity"),
    "QBel": ("QBel", "muPM"),
    "mcb_I": ("disj+neg", "mcb_I"),
    "mcb_II": ("disj0neg", "mcb_II"),
    "mcb_III": ("disj+N", "mcb_III"),
    "mcb_IV": ("disj0N", "mcb_IV"),
}


def correspondence_test(cond: str, max_states: int = 2, grid: int = 3,
                        flags: Optional[Iterable[str]] = None) -> dict:
    """Compare frame validity of a named formula with its measure condition on every bounded frame."""
    try:
        formula_name, prop = CORRESPONDENCES[cond]
    except KeyError:
        raise ModelError(f"unknown correspondence {cond!r}; known: {', '.join(CORRESPONDENCES)}") from None
    if max_states > MAX_SEARCH_STATES:
        raise BoundError(f"correspondence checks support at most {MAX_SEARCH_STATES} states")
    f = named_formula(formula_name)
    flags = tuple(DEFAULT_FLAGS[f.lang] if flags is None else flags)
    report = {"condition": cond, "formula": formula_name, "property": prop,
              "frames": 0, "agree": 0, "mismatches": []}
    for n in range(1, max_states + 1):
        for mu in monotone_measures(n, grid, flags):
            report["frames"] += 1
            semantic = check_property(n, mu, prop)
            valid = frame_validates(n, mu, f).holds
            agrees = semantic.holds == valid
            if agrees and cond == "QBel" and not semantic.holds:
                w = semantic.witness
                model, instance = qbel_witness(n, mu, *(sum(1 << s for s in w[k]) for k in "XYZ"))
                agrees = eval_qg(model, instance) == 0
            if agrees:
                report["agree"] += 1
            else:
                report["mismatches"].append({"states": n, "mu": table_json(mu),
                                             "property": semantic.holds, "valid": valid})
    report["holds"] = not report["mismatches"]
    logger.debug("correspondence %s: %d/%d frames agree", cond, report["agree"], report["frames"])
    return report


# ---------------- canonical models ----------------
def _definable(sets: Iterable[Tuple[int, Fraction, str]]) -> Dict[int, Fraction]:
    value: Dict[int, Fraction] = {}
    source: Dict[int, str] = {}
    for mask, x, label in sets:
        if mask in value and value[mask] != x:
            raise InconsistentValuationError(
                f"{source[mask]} and {label} denote the same event but get {value[mask]} and {x}")
        value[mask] = x
        source[mask] = label
    for a, b in itertools.permutations(value, 2):
        if a & ~b == 0 and value[a] > value[b]:
            raise InconsistentValuationError(
                f"{source[a]} denotes a subevent of {source[b]} but exceeds it: {value[a]} > {value[b]}")
    return value


def _sup_table(n: int, value: Mapping[int, Fraction]) -> Tuple[Fraction, ...]:
    return tuple(max((x for d, x in value.items() if d & ~s == 0), default=ZERO) for s in range(1 << n))


def _atoms_of(e: Mapping[str, object], formulas: Sequence[Formula], layer: Lang) -> List[Formula]:
    found = set(modal_atoms(formulas))
    found |= {parse(layer, key) for key in e}
    out = sorted(found, key=atom_key)
    missing = [atom_key(a) for a in out if atom_key(a) not in e]
    if missing:
        raise InconsistentValuationError(f"no value for {', '.join(missing)}")
    return out


def canonical_qg_model(e: Mapping[str, Fraction], formulas: Sequence[Formula] = ()) -> UncertaintyModel:
    """W = P(Var): state i contains variable j iff bit j of i is set; μ is the sup over definable subevents."""
    e = {k: unit(x) for k, x in e.items()}
    found = _atoms_of(e, formulas, Lang.QG)
    names = sorted(set().union(*(variables(a) for a in found)))
    if 1 << len(names) > MAX_MEASURE_STATES:
        raise BoundError(f"{len(names)} variables give more than {MAX_MEASURE_STATES} canonical states")
    n = 1 << len(names)
    v = {p: sum(1 << s for s in range(n) if s >> j & 1) for j, p in enumerate(names)}
    full = full_mask(n)
    value = _definable((extension(a.children[0], v, full), e[atom_key(a)], atom_key(a)) for a in found)
    m = UncertaintyModel(n, v, _sup_table(n, value))
    _check_reproduces(b_values(found, v, full, m.mu), e)
    return m


def canonical_mcb_model(e: Mapping[str, object], formulas: Sequence[Formula] = (),
                        variant: Lang = Lang.MCB) -> BeliefModel:
    """W = P(Lit): literal 2j is p_j and 2j+1 is ¬p_j; π is the sup over definable subevents."""
    e = {k: TwistValue.of(x) for k, x in e.items()}
    variant = _layer(variant)
    found = _atoms_of(e, formulas, variant)
    names = sorted(set().union(*(variables(a) for a in found)))
    if 1 << (2 * len(names)) > MAX_MEASURE_STATES:
        raise BoundError(f"{len(names)} variables give more than {MAX_MEASURE_STATES} canonical states")
    n = 1 << (2 * len(names))
    vplus = {p: sum(1 << s for s in range(n) if s >> (2 * j) & 1) for j, p in enumerate(names)}
    vminus = {p: sum(1 << s for s in range(n) if s >> (2 * j + 1) & 1) for j, p in enumerate(names)}
    entries = []
    for a in found:
        truth, falsity = e[atom_key(a)]
        pos, neg = signed_extension(vplus, vminus, a.children[0])
        entries.append((pos, truth, f"|{atom_key(a)}|+"))
        entries.append((neg, falsity, f"|{atom_key(a)}|-"))
    m = BeliefModel(n, vplus, vminus, _sup_table(n, _definable(entries)))
    _check_reproduces(c_values(found, vplus, vminus, m.pi), {k: tuple(x) for k, x in e.items()})
    return m


def _check_reproduces(got: Mapping[str, object], wanted: Mapping[str, object]):
    for key, x in got.items():
        if x != wanted[key]:
            raise InconsistentValuationError(f"canonical model gives {key} the value {x}, not {wanted[key]}")
