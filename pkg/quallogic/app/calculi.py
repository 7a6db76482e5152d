# quallogic/app/calculi.py
"""Hilbert calculi for the two-layered logics, and a checker for derivations in them.

Axiom schemas are stored as formula patterns whose variables are
metavariables. Matching is first order and sugar aware: △, ∼G, ↔ and the
other defined connectives are unfolded on either side when the two shapes
disagree.
"""
import json
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from quallogic.app.bd import bd_entails
from quallogic.app.classical import cpl_valid
from quallogic.app.config import MAX_KPS_M
from quallogic.app.decide import mixed_entails
from quallogic.app.errors import BoundError, DerivationFormatError, QualLogicError
from quallogic.app.measures import named_formula, qbel_instance
from quallogic.app.qp import a4_instance, comparison, e_g_notation, kps_instance
from quallogic.app.syntax import (
    CONSTANTS, NEL_FAMILY, SUGAR, Formula, Kind, Lang, conj_all, const, expand, fresh_variable,
    node, parse, print_formula, unfold, var, variables,
)

logger = logging.getLogger(__name__)


class Calculus(str, Enum):
    HBIG = "HBIG"
    HG2ORD = "HG2ORD"
    HG2NEL = "HG2NEL"
    HQG = "HQG"
    HQPG = "HQPG"
    HQP = "HQP"
    HMCB = "HMCB"
    HNMCB = "HNMCB"
    RFDE = "RFDE"


LANGUAGE: Dict[Calculus, Lang] = {
    Calculus.HBIG: Lang.BIG,
    Calculus.HG2ORD: Lang.G2ORD,
    Calculus.HG2NEL: Lang.G2NEL,
    Calculus.HQG: Lang.QG,
    Calculus.HQPG: Lang.QG,
    Calculus.HQP: Lang.QP,
    Calculus.HMCB: Lang.MCB,
    Calculus.HNMCB: Lang.NMCB,
    Calculus.RFDE: Lang.BD,
}

# propositional logic a calculus is closed under, for "logic" steps
OUTER: Dict[Calculus, Lang] = {
    Calculus.HBIG: Lang.BIG,
    Calculus.HQG: Lang.BIG,
    Calculus.HQPG: Lang.BIG,
    Calculus.HG2ORD: Lang.G2ORD,
    Calculus.HMCB: Lang.G2ORD,
    Calculus.HG2NEL: Lang.G2NEL,
    Calculus.HNMCB: Lang.G2NEL,
}

EXTENSIONS = ("cap", "cap'", "QBel", "1compl", "disj+", "disj0")
_EXTENDABLE = (Calculus.HQG, Calculus.HQPG)

Sequent = Tuple[Formula, Formula]
Item = Union[Formula, Sequent]


# ---------------- sugar-aware comparison ----------------
def _plain(f: Formula) -> tuple:
    return (f.kind.value, f.var, tuple(_plain(c) for c in f.children))


@lru_cache(maxsize=1 << 14)
def shape(f: Formula) -> tuple:
    """Structure of f with every defined connective unfolded and language tags dropped."""
    return _plain(unfold(f))


def same(f: Formula, g: Formula) -> bool:
    return f == g or shape(f) == shape(g)


def _unfoldable(f: Formula) -> bool:
    return f.kind in SUGAR and f.kind not in CONSTANTS


def _as(f: Formula, kind: Kind) -> Optional[Formula]:
    """f with top-level sugar unfolded until its main connective is kind, if it ever is."""
    while f.kind != kind and _unfoldable(f):
        f = expand(f)
    return f if f.kind == kind else None


def _match(p: Formula, f: Formula, binding: Dict[str, Formula]) -> bool:
    if p.kind == Kind.VAR:
        bound = binding.get(p.var)
        if bound is None:
            binding[p.var] = f
            return True
        return same(bound, f)
    if p.kind == f.kind:
        return len(p.children) == len(f.children) and all(
            _match(a, b, binding) for a, b in zip(p.children, f.children))
    if _unfoldable(p):
        return _match(expand(p), f, binding)
    if _unfoldable(f):
        return _match(p, expand(f), binding)
    return False


def match_pattern(p: Formula, f: Formula) -> Optional[Dict[str, Formula]]:
    binding: Dict[str, Formula] = {}
    return binding if _match(p, f, binding) else None


def substitute(p: Formula, values: Mapping[str, Formula]) -> Formula:
    if p.kind == Kind.VAR:
        return values.get(p.var, p)
    if not p.children:
        return p
    return Formula(p.kind, p.lang, tuple(substitute(c, values) for c in p.children))


# ---------------- schemas ----------------
Binding = Dict[str, object]


@dataclass(frozen=True)
class Schema:
    name: str
    pattern: Formula
    side: Optional[Callable[[Dict[str, Formula]], bool]] = None

    def match(self, f: Formula) -> Optional[Binding]:
        binding = match_pattern(self.pattern, f)
        if binding is None or (self.side is not None and not self.side(binding)):
            return None
        return binding


@dataclass(frozen=True)
class Family:
    """A schema indexed by m, recognized by taking an instance apart and rebuilding it."""

    name: str
    extract: Callable[[Formula], Optional[Binding]]

    def match(self, f: Formula) -> Optional[Binding]:
        return self.extract(f)


@dataclass(frozen=True)
class SequentSchema:
    name: str
    left: Formula
    right: Formula

    def match(self, sequent: Sequent) -> Optional[Binding]:
        binding: Dict[str, Formula] = {}
        if _match(self.left, sequent[0], binding) and _match(self.right, sequent[1], binding):
            return binding
        return None


_BIG_TEXTS = (
    ("1", "(a -> b) -> ((b -> c) -> (a -> c))"),
    ("2a", "a -> (a | b)"),
    ("2b", "b -> (a | b)"),
    ("3", "(a -> c) -> ((b -> c) -> ((a | b) -> c))"),
    ("4a", "(a & b) -> a"),
    ("4b", "(a & b) -> b"),
    ("5", "(a -> b) -> ((a -> c) -> (a -> (b & c)))"),
    ("6a", "(a -> (b -> c)) -> ((a & b) -> c)"),
    ("6b", "((a & b) -> c) -> (a -> (b -> c))"),
    ("7", "(a -> b) -> (snot b -> snot a)"),
    ("8a", "(a -< b) -> (Top -< (a -> b))"),
    ("8b", "snot (a -< b) -> (a -> b)"),
    ("9a", "a -> (b | (a -< b))"),
    ("9b", "((a -< b) -< c) -> (a -< (b | c))"),
    ("prel", "(a -> b) | (b -> a)"),
    ("prel_co", "Top -< ((a -< b) & (b -< a))"),
)

_NEG_TEXTS = (
    ("neg", "neg neg a <-> a"),
    ("DeM_and", "neg (a & b) <-> (neg a | neg b)"),
    ("DeM_or", "neg (a | b) <-> (neg a & neg b)"),
)
_ORD_TEXTS = _NEG_TEXTS + (
    ("DeM_imp", "neg (a -> b) <-> (neg b -< neg a)"),
    ("DeM_coimp", "neg (a -< b) <-> (neg b -> neg a)"),
)
_NEL_TEXTS = _NEG_TEXTS + (
    ("DeM_nimp", "neg (a ~> b) <-> (a & neg b)"),
    ("DeM_ncoimp", "neg (a o- b) <-> (neg a | b)"),
)


def _nelson(text: str) -> str:
    return re.sub(r"(?<![<=])->", "~>", text).replace("-<", "o-")


def _pattern(lang: Lang, text: str) -> Formula:
    return parse(lang, text, validate=False)


def _schemas(lang: Lang, texts: Iterable[Tuple[str, str]]) -> List[Schema]:
    return [Schema(name, _pattern(lang, text)) for name, text in texts]


def _cpl_implies(a: Formula, b: Formula) -> bool:
    return cpl_valid(node(Kind.MIMP, a, b, lang=Lang.CPL))


def _cpl_contradiction(a: Formula) -> bool:
    return cpl_valid(node(Kind.NOT, a, lang=Lang.CPL))


def _qg_core() -> List[Schema]:
    return [
        Schema("nontriv", _pattern(Lang.QG, "snot delta (B(a) -> B(b))"),
               lambda b: cpl_valid(b["a"]) and _cpl_contradiction(b["b"])),
        Schema("reg", _pattern(Lang.QG, "B(a) -> B(b)"), lambda b: _cpl_implies(b["a"], b["b"])),
    ]


def _qg_extension(name: str) -> List[Schema]:
    if name == "cap'":
        return [Schema("cap'", _pattern(Lang.QG, "B(a)"), lambda b: cpl_valid(b["a"])),
                Schema("cap'", _pattern(Lang.QG, "snot B(b)"), lambda b: _cpl_contradiction(b["b"]))]
    if name == "QBel":
        text = "snot delta (B(c) -> B(a)) -> snot delta (B(c | s) -> B(a | s))"
        return [Schema("QBel", _pattern(Lang.QG, text),
                       lambda b: qbel_instance(b["a"], b["c"], b["s"]) is not None)]
    # the named formulas have no outer variables; their inner variables act as metavariables
    return [Schema(name, named_formula(name))]


# ---------------- indexed families ----------------
_COMPARISON = _pattern(Lang.QG, "delta (B(a) -> B(b))")
_LEQ = _pattern(Lang.QP, "a <= b")
_A0_QG = _pattern(Lang.QG, "x & y -> (delta (B(a) -> B(c)) <-> delta (B(b) -> B(d)))")


def _pair(p: Formula) -> Callable[[Formula], Optional[Tuple[Formula, Formula]]]:
    def read(f: Formula):
        binding = match_pattern(p, f)
        return (binding["a"], binding["b"]) if binding else None
    return read


def _peel(f: Formula, read) -> List[Tuple[Formula, Formula]]:
    """Conjuncts read off the right end of a left-nested conjunction, rightmost first."""
    found = []
    while True:
        g = _as(f, Kind.AND)
        pair = read(g.right) if g is not None else None
        if pair is None:
            return found
        found.append(pair)
        f = g.left


def _family_binding(m: int, left: str, lefts: Sequence[Formula], right: str,
                    rights: Sequence[Formula]) -> Binding:
    binding: Binding = {"m": m}
    for i, (a, b) in enumerate(zip(lefts, rights)):
        binding[f"{left}{i}"] = a
        binding[f"{right}{i}"] = b
    return binding


def _match_kps(f: Formula) -> Optional[Binding]:
    g = _as(f, Kind.IMP)
    last = _pair(_COMPARISON)(g.right) if g is not None else None
    if last is None:
        return None
    chi_m, phi_m = last
    pairs = _peel(g.left, _pair(_COMPARISON))
    for m in range(min(len(pairs), MAX_KPS_M) + 1):
        head = list(reversed(pairs[:m]))
        phis = [a for a, _ in head] + [phi_m]
        chis = [b for _, b in head] + [chi_m]
        if same(kps_instance(m, phis, chis), f):
            return _family_binding(m, "phi", phis, "chi", chis)
    if len(pairs) > MAX_KPS_M:
        raise BoundError(f"KPS instances are recognized up to m = {MAX_KPS_M}")
    return None


def _match_a4(f: Formula) -> Optional[Binding]:
    g = _as(f, Kind.MIMP)
    last = _pair(_LEQ)(g.right) if g is not None else None
    if last is None:
        return None
    psi_m, phi_m = last
    pairs = _peel(g.left, _pair(_LEQ))
    for m in range(1, min(len(pairs) + 1, MAX_KPS_M) + 1):
        head = list(reversed(pairs[:m - 1]))
        phis = [a for a, _ in head] + [phi_m]
        psis = [b for _, b in head] + [psi_m]
        if same(a4_instance(m, phis, psis), f):
            return _family_binding(m, "phi", phis, "psi", psis)
    if len(pairs) > MAX_KPS_M:
        raise BoundError(f"(A4) instances are recognized up to m = {MAX_KPS_M}")
    return None


def a0_instance(phi1: Formula, phi2: Formula, psi1: Formula, psi2: Formula) -> Formula:
    """E_G(φ₁;φ₂) ∧ E_G(ψ₁;ψ₂) →G (△(Bφ₁→Bψ₁) ↔G △(Bφ₂→Bψ₂))."""
    premise = node(Kind.AND, e_g_notation([phi1], [phi2]), e_g_notation([psi1], [psi2]))
    return node(Kind.IMP, premise, node(Kind.IFF, comparison(phi1, psi1), comparison(phi2, psi2)))


def _match_a0(f: Formula) -> Optional[Binding]:
    b = match_pattern(_A0_QG, f)
    if b is None or not same(a0_instance(b["a"], b["b"], b["c"], b["d"]), f):
        return None
    return {"phi1": b["a"], "phi2": b["b"], "psi1": b["c"], "psi2": b["d"]}


def skeleton(f: Formula) -> Formula:
    """The propositional skeleton of a QP formula: each comparison becomes a fresh variable."""
    taken = set(variables(f))
    names: Dict[tuple, str] = {}

    def walk(g: Formula) -> Formula:
        if g.kind in (Kind.APPROX, Kind.LESS):
            return walk(expand(g))
        if g.kind == Kind.LEQ:
            key = shape(g)
            if key not in names:
                names[key] = fresh_variable(taken, "k")
                taken.add(names[key])
            return var(names[key], Lang.QP)
        if not g.children:
            return g
        return Formula(g.kind, g.lang, tuple(walk(c) for c in g.children), g.var)

    return walk(f)


def _match_pc(f: Formula) -> Optional[Binding]:
    return {} if cpl_valid(skeleton(f)) else None


_QP_TEXTS = (
    ("A0", "((a1 <=> a2) ~~ Top) & ((b1 <=> b2) ~~ Top) => ((a1 <= b1) <=> (a2 <= b2))"),
    ("A1", "Bot <= a"),
    ("A2", "(a <= b) | (b <= a)"),
    ("A3", "Bot << Top"),
)

_FDE_TEXTS = (
    ("and_e1", "a & b", "a"),
    ("and_e2", "a & b", "b"),
    ("or_i1", "a", "a | b"),
    ("or_i2", "b", "a | b"),
    ("dem_and", "neg (a & b)", "neg a | neg b"),
    ("dem_and_r", "neg a | neg b", "neg (a & b)"),
    ("dem_or", "neg (a | b)", "neg a & neg b"),
    ("dem_or_r", "neg a & neg b", "neg (a | b)"),
    ("dneg", "neg neg a", "a"),
    ("dneg_r", "a", "neg neg a"),
    ("dist", "a & (b | c)", "(a & b) | (a & c)"),
    ("id", "a", "a"),
)


def _check_extensions(c: Calculus, extensions: Iterable[str]) -> Tuple[str, ...]:
    extensions = tuple(sorted(set(extensions)))
    unknown = [e for e in extensions if e not in EXTENSIONS]
    if unknown:
        raise DerivationFormatError(f"unknown extension {unknown[0]!r}; known: {', '.join(EXTENSIONS)}")
    if extensions and c not in _EXTENDABLE:
        raise DerivationFormatError(f"{c.value} takes no extension schemas")
    return extensions


@lru_cache(maxsize=None)
def schema_table(c: Calculus, extensions: Tuple[str, ...] = ()) -> Dict[str, list]:
    """Schema id → matchers, in the order match_axiom tries them."""
    c = Calculus(c)
    lang = LANGUAGE[c]
    if c == Calculus.RFDE:
        items = [SequentSchema(n, _pattern(lang, a), _pattern(lang, b)) for n, a, b in _FDE_TEXTS]
    elif c == Calculus.HQP:
        items = _schemas(lang, _QP_TEXTS) + [Family("A4", _match_a4), Family("PC", _match_pc)]
    elif c in (Calculus.HG2NEL, Calculus.HNMCB):
        items = _schemas(lang, [(n, _nelson(t)) for n, t in _BIG_TEXTS] + list(_NEL_TEXTS))
    elif c in (Calculus.HG2ORD, Calculus.HMCB):
        items = _schemas(lang, list(_BIG_TEXTS) + list(_ORD_TEXTS))
    else:
        items = _schemas(lang, _BIG_TEXTS)
    if c == Calculus.HMCB:
        items += [Schema("MCB_BD", _pattern(lang, "C(a) -> C(b)"), lambda b: bd_entails(b["a"], b["b"]).holds),
                  Schema("MCB_neg", _pattern(lang, "C(neg a) <-> neg C(a)"))]
    if c == Calculus.HNMCB:
        items += [Schema("NMCB_BD", _pattern(lang, "C(a) ==> C(b)"), lambda b: bd_entails(b["a"], b["b"]).holds),
                  Schema("NMCB_neg", _pattern(lang, "C(neg a) <==> neg C(a)"))]
    if c in _EXTENDABLE:
        items += _qg_core()
        for name in extensions:
            items += _qg_extension(name)
    if c == Calculus.HQPG:
        if "cap'" in extensions:
            items = [s for s in items if s.name != "reg"]
        items += [Family("KPS", _match_kps), Family("A0", _match_a0)]
    table: Dict[str, list] = {}
    for item in items:
        table.setdefault(item.name, []).append(item)
    return table


# ---------------- matching ----------------
def _show(value) -> Union[str, int]:
    return print_formula(value) if isinstance(value, Formula) else value


@dataclass
class AxiomMatch:
    schema: str
    substitution: Dict[str, object]

    @property
    def m(self) -> Optional[int]:
        return self.substitution.get("m")

    def to_json(self) -> dict:
        return {"schema": self.schema,
                "substitution": {k: _show(v) for k, v in sorted(self.substitution.items())}}


def match_axiom(c: Calculus, f: Item, extensions: Iterable[str] = ()) -> Optional[AxiomMatch]:
    """The first schema of c that f instantiates, with its substitution.

    Raises BoundError for an indexed family instance beyond the recognized index.
    """
    c = Calculus(c)
    for name, matchers in schema_table(c, _check_extensions(c, extensions)).items():
        for matcher in matchers:
            binding = matcher.match(f)
            if binding is not None:
                return AxiomMatch(name, binding)
    return None


def match_schema(c: Calculus, name: str, f: Item, m: Optional[int] = None,
                 extensions: Iterable[str] = ()) -> Optional[AxiomMatch]:
    c = Calculus(c)
    matchers = schema_table(c, _check_extensions(c, extensions)).get(name)
    if matchers is None:
        return None
    for matcher in matchers:
        binding = matcher.match(f)
        if binding is not None and (m is None or binding.get("m") == m):
            return AxiomMatch(name, binding)
    return None


def instantiate(c: Calculus, name: str, values: Mapping[str, Formula], extensions: Iterable[str] = ()) -> Formula:
    """Substitute values for the metavariables of a pattern schema."""
    c = Calculus(c)
    matchers = schema_table(c, _check_extensions(c, extensions)).get(name) or []
    patterns = [m for m in matchers if isinstance(m, Schema)]
    if not patterns:
        raise DerivationFormatError(f"{c.value} has no pattern schema named {name!r}")
    return substitute(patterns[0].pattern, values)


# ---------------- derivations ----------------
_RULES = ("axiom", "premise", "mp", "nec", "logic", "via", "rule")
_FDE_RULES = ("or_e", "and_i", "trans")


@dataclass
class Step:
    item: Item
    just: dict


@dataclass
class Derivation:
    calculus: Calculus
    steps: List[Step]
    premises: List[Item] = field(default_factory=list)
    extensions: Tuple[str, ...] = ()

    @classmethod
    def from_json(cls, data: Mapping) -> "Derivation":
        if not isinstance(data, Mapping):
            raise DerivationFormatError("a derivation is a JSON object")
        try:
            c = Calculus(data.get("calculus"))
        except ValueError:
            raise DerivationFormatError(f"unknown calculus {data.get('calculus')!r}") from None
        extensions = _check_extensions(c, data.get("extensions") or ())
        steps = []
        for i, raw in enumerate(data.get("steps") or [], start=1):
            if not isinstance(raw, Mapping) or not isinstance(raw.get("just"), Mapping):
                raise DerivationFormatError(f"step {i} needs a formula and a 'just' object")
            text = raw.get("sequent") if c == Calculus.RFDE else raw.get("formula")
            steps.append(Step(read_item(c, text), dict(raw["just"])))
        if not steps:
            raise DerivationFormatError("a derivation needs at least one step")
        premises = [read_item(c, p) for p in data.get("premises") or []]
        return cls(c, steps, premises, extensions)


def read_item(c: Calculus, raw) -> Item:
    lang = LANGUAGE[c]
    if c == Calculus.RFDE:
        if isinstance(raw, Mapping):
            raw = raw.get("sequent")
        if not isinstance(raw, (list, tuple)) or len(raw) != 2:
            raise DerivationFormatError("an R_fde step is a sequent [φ, χ]")
        return parse(lang, raw[0]), parse(lang, raw[1])
    if not isinstance(raw, str):
        raise DerivationFormatError(f"expected formula text, got {raw!r}")
    return parse(lang, raw)


def load_derivation(path: Union[str, Path]) -> Derivation:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise DerivationFormatError(f"{path}: {e}") from None
    return Derivation.from_json(data)


def show_item(item: Item) -> str:
    if isinstance(item, tuple):
        return f"{print_formula(item[0])} |- {print_formula(item[1])}"
    return print_formula(item)


@dataclass
class StepReport:
    index: int
    ok: bool
    rule: str
    tainted: bool = False
    reason: Optional[str] = None

    def to_json(self) -> dict:
        out = {"index": self.index, "ok": self.ok, "rule": self.rule, "tainted": self.tainted}
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass
class CheckReport:
    calculus: Calculus
    steps: List[StepReport]

    @property
    def accepted(self) -> bool:
        return all(s.ok for s in self.steps)

    @property
    def first_failure(self) -> Optional[StepReport]:
        return next((s for s in self.steps if not s.ok), None)

    def to_json(self) -> dict:
        out = {"calculus": self.calculus.value, "status": "accept" if self.accepted else "reject",
               "steps": [s.to_json() for s in self.steps]}
        failure = self.first_failure
        if failure is not None:
            out["first_failure"] = failure.to_json()
        return out


class _Reject(Exception):
    pass


def _rule_of(just: Mapping, index: int) -> str:
    found = [k for k in _RULES if k in just]
    if len(found) != 1:
        raise DerivationFormatError(f"step {index}: justification needs exactly one of {', '.join(_RULES)}")
    return found[0]


def _index_list(value, index: int, size: Optional[int] = None) -> List[int]:
    if not isinstance(value, list) or any(not isinstance(i, int) or isinstance(i, bool) for i in value):
        raise DerivationFormatError(f"step {index}: expected a list of step numbers, got {value!r}")
    if size is not None and len(value) != size:
        raise DerivationFormatError(f"step {index}: expected {size} step numbers, got {len(value)}")
    for i in value:
        if not 1 <= i < index:
            raise DerivationFormatError(f"step {index}: step {i} is not an earlier step")
    return value


class _Checker:
    def __init__(self, c: Calculus, premises: Sequence[Item], extensions: Tuple[str, ...]):
        self.c = c
        self.lang = LANGUAGE[c]
        self.premises = list(premises)
        self.extensions = extensions
        self.items: List[Item] = []
        self.reports: List[StepReport] = []

    # cited steps must themselves be accepted
    def cited(self, indices: Sequence[int]) -> List[Tuple[Item, bool]]:
        out = []
        for i in indices:
            report = self.reports[i - 1]
            if not report.ok:
                raise _Reject(f"cites rejected step {i}")
            out.append((self.items[i - 1], report.tainted))
        return out

    def implication(self) -> Kind:
        if self.c == Calculus.HQP:
            return Kind.MIMP
        return Kind.NIMP if self.lang in NEL_FAMILY else Kind.IMP

    def same_item(self, a: Item, b: Item) -> bool:
        if isinstance(a, tuple) != isinstance(b, tuple):
            return False
        if isinstance(a, tuple):
            return same(a[0], b[0]) and same(a[1], b[1])
        return same(a, b)

    def schema(self, name, m, item: Item) -> AxiomMatch:
        if not isinstance(name, str) or (m is not None and (not isinstance(m, int) or isinstance(m, bool))):
            raise DerivationFormatError(f"malformed axiom citation {name!r}, m={m!r}")
        if name not in schema_table(self.c, self.extensions):
            raise _Reject(f"{self.c.value} has no schema {name!r}")
        try:
            found = match_schema(self.c, name, item, m, self.extensions)
        except BoundError as e:
            raise _Reject(e.message) from None
        if found is None:
            raise _Reject(f"{show_item(item)} is not an instance of {name}" + (f" with m = {m}" if m is not None else ""))
        return found

    def step(self, index: int, item: Item, just: Mapping) -> Tuple[str, bool]:
        rule = _rule_of(just, index)
        handler = getattr(self, f"_{rule}")
        return rule, handler(index, item, just)

    def _axiom(self, index, item, just) -> bool:
        self.schema(just["axiom"], just.get("m"), item)
        return False

    def _premise(self, index, item, just) -> bool:
        k = just["premise"]
        if k is not True and (not isinstance(k, int) or isinstance(k, bool) or k < 1):
            raise DerivationFormatError(f"step {index}: premise takes a 1-based index or true")
        if not any(self.same_item(item, p) for p in self.premises):
            raise _Reject(f"{show_item(item)} is not among the premises")
        return True

    def _mp(self, index, item, just) -> bool:
        if self.c == Calculus.RFDE:
            raise _Reject("R_fde has no modus ponens")
        (a, ta), (b, tb) = self.cited(_index_list(just["mp"], index, 2))
        kind = self.implication()
        for minor, major in ((a, b), (b, a)):
            g = _as(major, kind)
            if g is not None and same(g.left, minor) and same(g.right, item):
                return ta or tb
        raise _Reject(f"{show_item(item)} does not follow by modus ponens from steps {just['mp']}")

    def _nec(self, index, item, just) -> bool:
        if self.c == Calculus.RFDE:
            raise _Reject("R_fde has no necessitation")
        i = just["nec"]
        ((a, tainted),) = self.cited(_index_list([i] if isinstance(i, int) else i, index, 1))
        if tainted:
            raise _Reject(f"necessitation applied to step {i}, which depends on premises")
        if self.c == Calculus.HQP:
            wanted = node(Kind.APPROX, a, const(Kind.TOP, Lang.QP))
        else:
            wanted = node(Kind.DELTA, a, lang=self.lang)
        if not same(item, wanted):
            raise _Reject(f"necessitation of step {i} gives {print_formula(wanted)}")
        return False

    def _logic(self, index, item, just) -> bool:
        return self.follows(index, item, self.cited(_index_list(just["logic"], index)), [])

    def _via(self, index, item, just) -> bool:
        listed = just["via"]
        if not isinstance(listed, list) or any(not isinstance(x, Mapping) for x in listed):
            raise DerivationFormatError(f"step {index}: 'via' lists axiom instances")
        instances = []
        for entry in listed:
            if "instance" not in entry or "axiom" not in entry:
                raise DerivationFormatError(f"step {index}: each 'via' entry needs 'axiom' and 'instance'")
            instance = read_item(self.c, entry["instance"])
            self.schema(entry["axiom"], entry.get("m"), instance)
            instances.append(instance)
        return self.follows(index, item, self.cited(_index_list(just.get("from", []), index)), instances)

    def follows(self, index: int, item: Item, cited: List[Tuple[Item, bool]], instances: List[Item]) -> bool:
        tainted = any(t for _, t in cited)
        if self.c == Calculus.RFDE:
            if not bd_entails(*item).holds:
                raise _Reject(f"{show_item(item)} is not a valid sequent")
            return tainted
        if self.c == Calculus.HQP:
            gathered = [g for g, _ in cited] + instances
            claim = node(Kind.MIMP, conj_all(gathered), item) if gathered else item
            if not cpl_valid(skeleton(claim)):
                raise _Reject(f"{show_item(item)} is not a propositional consequence of the cited steps")
            return tainted
        global_ = instances + [g for g, t in cited if not t]
        local = [g for g, t in cited if t]
        try:
            verdict = mixed_entails(OUTER[self.c], global_, local, item)
        except BoundError as e:
            raise _Reject(e.message) from None
        if not verdict.holds:
            raise _Reject(f"{show_item(item)} does not follow in {OUTER[self.c].value} from the cited steps")
        return tainted

    def _rule(self, index, item, just) -> bool:
        name = just["rule"]
        if self.c != Calculus.RFDE or name not in _FDE_RULES:
            raise _Reject(f"rule {name!r} is not a rule of {self.c.value}")
        (a, ta), (b, tb) = self.cited(_index_list(just.get("from"), index, 2))
        phi, chi = item
        for x, y in ((a, b), (b, a)):
            if name == "trans" and same(x[0], phi) and same(x[1], y[0]) and same(y[1], chi):
                return ta or tb
            if name == "and_i" and same(x[0], phi) and same(y[0], phi):
                g = _as(chi, Kind.AND)
                if g is not None and same(g.left, x[1]) and same(g.right, y[1]):
                    return ta or tb
            if name == "or_e" and same(x[1], chi) and same(y[1], chi):
                g = _as(phi, Kind.OR)
                if g is not None and same(g.left, x[0]) and same(g.right, y[0]):
                    return ta or tb
        raise _Reject(f"{show_item(item)} does not follow by {name} from steps {just.get('from')}")


def check_derivation(c: Calculus, d: Union[Derivation, Sequence[Step]], premises: Optional[Iterable[Item]] = None,
                     extensions: Optional[Iterable[str]] = None) -> CheckReport:
    """Check every step of d; premises and extensions default to the derivation's own."""
    c = Calculus(c)
    if isinstance(d, Derivation):
        if d.calculus != c:
            raise DerivationFormatError(f"derivation is written for {d.calculus.value}, not {c.value}")
        steps = d.steps
        premises = d.premises if premises is None else premises
        extensions = d.extensions if extensions is None else extensions
    else:
        steps = list(d)
    checker = _Checker(c, list(premises or ()), _check_extensions(c, extensions or ()))
    for index, step in enumerate(steps, start=1):
        try:
            rule, tainted = checker.step(index, step.item, step.just)
            report = StepReport(index, True, rule, tainted)
        except _Reject as e:
            report = StepReport(index, False, _rule_of(step.just, index), reason=str(e))
        except QualLogicError as e:
            if isinstance(e, DerivationFormatError):
                raise
            report = StepReport(index, False, _rule_of(step.just, index), reason=e.message)
        checker.items.append(step.item)
        checker.reports.append(report)
    result = CheckReport(c, checker.reports)
    failure = result.first_failure
    if failure is None:
        logger.info("%s derivation accepted (%d steps)", c.value, len(steps))
    else:
        logger.info("%s derivation rejected at step %d: %s", c.value, failure.index, failure.reason)
    return result
