# quallogic/app/models.py
"""Finite models and result records, with their JSON forms."""
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Type

from pydantic import ValidationError

from quallogic.app.config import MAX_BD_STATES, MAX_LP_STATES, MAX_MEASURE_STATES
from quallogic.app.errors import ModelError, OrderError, QualLogicError, StateError
from quallogic.app.schemas import ModelPayload
from quallogic.utils import frac_str, full_mask, mask_of, parse_subset_key, states_of, subset_key, to_fraction

HOLDS = "holds"
FAILS = "fails"


def _check_states(states: int, limit: int):
    if not isinstance(states, int) or states < 1:
        raise ModelError(f"a model needs at least one state, got {states!r}")
    if states > limit:
        raise ModelError(f"{states} states exceed the limit of {limit}")


@contextmanager
def _reading(error: Type[QualLogicError] = ModelError):
    """Malformed entries of a JSON payload surface as the given domain error."""
    try:
        yield
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise error(f"malformed entry: {e}") from None


def read_payload(data, limit: int, error: Type[QualLogicError] = ModelError) -> ModelPayload:
    """Validate the JSON shape, then the state count, before any subset table is built."""
    try:
        payload = ModelPayload.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(x) for x in first["loc"]) or "payload"
        raise error(f"{where}: {first['msg']}") from None
    if payload.states > limit:
        raise error(f"{payload.states} states exceed the limit of {limit}")
    return payload


def _check_masks(name: str, valuation: Mapping[str, int], states: int):
    full = full_mask(states)
    for p, mask in valuation.items():
        if mask & ~full:
            raise ModelError(f"{name}({p}) mentions a state outside 0..{states - 1}")


def _read_valuation(data: Optional[Mapping[str, Sequence[int]]]) -> Dict[str, int]:
    return {p: mask_of(int(s) for s in states) for p, states in (data or {}).items()}


def _write_valuation(valuation: Mapping[str, int]) -> Dict[str, List[int]]:
    return {p: states_of(mask) for p, mask in sorted(valuation.items())}


def table_from_json(data: Mapping[str, object], states: int, default=None) -> Tuple[Fraction, ...]:
    table: List[Optional[Fraction]] = [default] * (1 << states)
    for key, value in data.items():
        with _reading():
            mask = parse_subset_key(key)
            if mask >= len(table):
                raise ModelError(f"subset {key} mentions a state outside 0..{states - 1}")
            table[mask] = to_fraction(value)
    missing = [subset_key(m) for m, value in enumerate(table) if value is None]
    if missing:
        raise ModelError(f"measure table is missing subsets {', '.join(missing[:4])}")
    return tuple(table)


def table_json(table: Sequence[Fraction]) -> Dict[str, str]:
    return {subset_key(m): frac_str(value) for m, value in enumerate(table)}


def _check_table(name: str, table: Sequence[Fraction], states: int):
    if len(table) != 1 << states:
        raise ModelError(f"{name} must give a value for all {1 << states} subsets")
    for m, value in enumerate(table):
        if value < 0 or value > 1:
            raise ModelError(f"{name}({subset_key(m)}) = {value} lies outside [0,1]")


def check_frame(states: int, table: Sequence[Fraction]):
    _check_states(states, MAX_MEASURE_STATES)
    _check_table("mu", table, states)


def frame_from_json(data: Mapping) -> Tuple[int, Tuple[Fraction, ...]]:
    """A bare frame ⟨W, μ⟩: the state count and the full measure table."""
    payload = read_payload(data, MAX_MEASURE_STATES)
    states = payload.states
    table = table_from_json(payload.mu or payload.pi or {}, states)
    _check_table("mu", table, states)
    return states, table


def frame_json(states: int, table: Sequence[Fraction]) -> dict:
    return {"states": states, "mu": table_json(table)}


# ---------------- Verdict ----------------
@dataclass
class Verdict:
    status: str
    witness: Optional[dict] = None
    model: Optional[object] = None
    note: Optional[str] = None

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @classmethod
    def ok(cls, note: Optional[str] = None) -> "Verdict":
        return cls(HOLDS, note=note)

    @classmethod
    def refuted(cls, witness: Optional[dict] = None, model=None, note: Optional[str] = None) -> "Verdict":
        return cls(FAILS, witness=witness, model=model, note=note)

    def to_json(self) -> dict:
        out: dict = {"status": self.status}
        if self.witness is not None:
            out["witness"] = {k: _value_json(v) for k, v in self.witness.items()}
        if self.model is not None:
            out["model"] = self.model.to_json()
        if self.note:
            out["note"] = self.note
        return out


def _value_json(value):
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, Fraction):
        return frac_str(value)
    if hasattr(value, "value"):
        return value.value
    return value


# ---------------- BD ----------------
@dataclass(frozen=True)
class BDModel:
    states: int
    vplus: Dict[str, int] = field(default_factory=dict)
    vminus: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        _check_states(self.states, MAX_BD_STATES)
        _check_masks("v+", self.vplus, self.states)
        _check_masks("v-", self.vminus, self.states)

    @property
    def full(self) -> int:
        return full_mask(self.states)

    def check_state(self, s: int):
        if not 0 <= s < self.states:
            raise StateError(f"state {s} is outside 0..{self.states - 1}")

    def to_json(self) -> dict:
        return {"states": self.states, "vplus": _write_valuation(self.vplus),
                "vminus": _write_valuation(self.vminus)}

    @classmethod
    def from_json(cls, data: Mapping) -> "BDModel":
        p = read_payload(data, MAX_BD_STATES)
        return cls(p.states, _read_valuation(p.vplus), _read_valuation(p.vminus))


# ---------------- Kripke ----------------
@dataclass(frozen=True)
class KripkeModel:
    """A linear G² frame: rank[s] is the position of s in the chain, 0 at the bottom."""

    states: int
    rank: Tuple[int, ...]
    vplus: Dict[str, int] = field(default_factory=dict)
    vminus: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        _check_states(self.states, MAX_BD_STATES)
        if sorted(self.rank) != list(range(self.states)):
            raise ModelError(f"order must rank the states 0..{self.states - 1} exactly once, got {list(self.rank)}")
        for name, valuation in (("v+", self.vplus), ("v-", self.vminus)):
            _check_masks(name, valuation, self.states)
            for p, mask in valuation.items():
                if self.up(mask) != mask:
                    raise ModelError(f"{name}({p}) = {states_of(mask)} is not upward closed")

    @property
    def full(self) -> int:
        return full_mask(self.states)

    def check_state(self, s: int):
        if not 0 <= s < self.states:
            raise StateError(f"state {s} is outside 0..{self.states - 1}")

    def above(self, s: int) -> int:
        """Mask of all s′ with s ≼ s′."""
        return mask_of(t for t in range(self.states) if self.rank[t] >= self.rank[s])

    def below(self, s: int) -> int:
        return mask_of(t for t in range(self.states) if self.rank[t] <= self.rank[s])

    def up(self, mask: int) -> int:
        if not mask:
            return 0
        lowest = min(self.rank[s] for s in states_of(mask))
        return mask_of(t for t in range(self.states) if self.rank[t] >= lowest)

    def chain(self) -> List[int]:
        """States from bottom to top."""
        return sorted(range(self.states), key=lambda s: self.rank[s])

    def to_json(self) -> dict:
        return {"states": self.states, "order": list(self.rank),
                "vplus": _write_valuation(self.vplus), "vminus": _write_valuation(self.vminus)}

    @classmethod
    def from_json(cls, data: Mapping) -> "KripkeModel":
        p = read_payload(data, MAX_BD_STATES)
        rank = tuple(p.order) if p.order is not None else tuple(range(p.states))
        return cls(p.states, rank, _read_valuation(p.vplus), _read_valuation(p.vminus))


# ---------------- two-layered ----------------
@dataclass(frozen=True)
class UncertaintyModel:
    """Classical states with an uncertainty measure μ stored over every subset (index = bitmask)."""

    states: int
    v: Dict[str, int]
    mu: Tuple[Fraction, ...]

    def __post_init__(self):
        _check_states(self.states, MAX_MEASURE_STATES)
        _check_masks("v", self.v, self.states)
        _check_table("mu", self.mu, self.states)

    @property
    def full(self) -> int:
        return full_mask(self.states)

    def to_json(self) -> dict:
        return {"states": self.states, "v": _write_valuation(self.v), "mu": table_json(self.mu)}

    @classmethod
    def from_json(cls, data: Mapping) -> "UncertaintyModel":
        p = read_payload(data, MAX_MEASURE_STATES)
        return cls(p.states, _read_valuation(p.v), table_from_json(p.mu or {}, p.states))


@dataclass(frozen=True)
class BeliefModel:
    states: int
    vplus: Dict[str, int]
    vminus: Dict[str, int]
    pi: Tuple[Fraction, ...]

    def __post_init__(self):
        _check_states(self.states, MAX_MEASURE_STATES)
        _check_masks("v+", self.vplus, self.states)
        _check_masks("v-", self.vminus, self.states)
        _check_table("pi", self.pi, self.states)

    @property
    def full(self) -> int:
        return full_mask(self.states)

    def bd(self) -> BDModel:
        return BDModel(self.states, self.vplus, self.vminus)

    def to_json(self) -> dict:
        return {"states": self.states, "v": _write_valuation(self.vplus),
                "vminus": _write_valuation(self.vminus), "mu": table_json(self.pi)}

    @classmethod
    def from_json(cls, data: Mapping) -> "BeliefModel":
        p = read_payload(data, MAX_MEASURE_STATES)
        vplus = p.v if p.v is not None else p.vplus
        return cls(p.states, _read_valuation(vplus), _read_valuation(p.vminus),
                   table_from_json(p.pi or p.mu or {}, p.states))


@dataclass(frozen=True)
class GardenforsModel:
    """weights[x] is the point distribution of P_x over the states."""

    states: int
    weights: Tuple[Tuple[Fraction, ...], ...]
    v: Dict[str, int]

    def __post_init__(self):
        _check_states(self.states, MAX_MEASURE_STATES)
        _check_masks("v", self.v, self.states)
        if len(self.weights) != self.states:
            raise ModelError(f"need one probability measure per state, got {len(self.weights)}")
        for x, row in enumerate(self.weights):
            if len(row) != self.states:
                raise ModelError(f"P_{x} must weigh each of the {self.states} states")
            if any(w < 0 for w in row) or sum(row) != 1:
                raise ModelError(f"weights of P_{x} must be non-negative and sum to 1")

    def check_state(self, x: int):
        if not 0 <= x < self.states:
            raise StateError(f"state {x} is outside 0..{self.states - 1}")

    @property
    def full(self) -> int:
        return full_mask(self.states)

    def probability(self, x: int, mask: int) -> Fraction:
        return sum((self.weights[x][s] for s in states_of(mask)), Fraction(0))

    def to_json(self) -> dict:
        return {"states": self.states,
                "weights": {str(x): [frac_str(w) for w in row] for x, row in enumerate(self.weights)},
                "v": _write_valuation(self.v)}

    @classmethod
    def from_json(cls, data: Mapping) -> "GardenforsModel":
        p = read_payload(data, MAX_MEASURE_STATES)
        raw = p.weights or {}
        missing = [x for x in range(p.states) if str(x) not in raw]
        if missing:
            raise ModelError(f"missing weights for state {missing[0]}")
        with _reading():
            rows = tuple(tuple(to_fraction(w) for w in raw[str(x)]) for x in range(p.states))
        return cls(p.states, rows, _read_valuation(p.v))


# ---------------- orders and LP witnesses ----------------
@dataclass(frozen=True)
class OrderInstance:
    """A total preorder on the subsets of W: X ≼ Y iff rank[X] <= rank[Y]."""

    states: int
    rank: Tuple[int, ...]

    def __post_init__(self):
        if self.states < 1:
            raise OrderError("an order needs a non-empty ground set")
        if len(self.rank) != 1 << self.states:
            raise OrderError(f"a total order ranks all {1 << self.states} subsets, got {len(self.rank)}")
        if any(not isinstance(r, int) or r < 0 for r in self.rank):
            raise OrderError("ranks must be natural numbers")

    @classmethod
    def from_measure(cls, states: int, mu: Sequence[Fraction]) -> "OrderInstance":
        levels = {value: i for i, value in enumerate(sorted(set(mu)))}
        return cls(states, tuple(levels[value] for value in mu))

    def to_json(self) -> dict:
        return {"states": self.states, "rank": {subset_key(m): r for m, r in enumerate(self.rank)}}

    @classmethod
    def from_json(cls, data: Mapping) -> "OrderInstance":
        p = read_payload(data, MAX_LP_STATES, OrderError)
        states = p.states
        rank: List[Optional[int]] = [None] * (1 << states)
        for key, r in (p.rank or {}).items():
            with _reading(OrderError):
                mask = parse_subset_key(key)
            if mask >= len(rank):
                raise OrderError(f"subset {key} mentions a state outside 0..{states - 1}")
            rank[mask] = r
        if any(r is None for r in rank):
            raise OrderError("partial orders are not accepted: every subset needs a rank")
        return cls(states, tuple(rank))


@dataclass(frozen=True)
class MeasureWitness:
    weights: Tuple[Fraction, ...]
    epsilon: Fraction

    def measure(self, mask: int) -> Fraction:
        return sum((self.weights[s] for s in states_of(mask)), Fraction(0))

    def to_json(self) -> dict:
        return {"weights": [frac_str(w) for w in self.weights], "epsilon": frac_str(self.epsilon)}
