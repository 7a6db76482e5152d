# quallogic/utils.py
import json
from fractions import Fraction
from typing import Iterable, List, Union

Number = Union[int, str, Fraction]


# ---------------------------
# Rational helpers
# ---------------------------
def to_fraction(x: Number) -> Fraction:
    """Read "7/10", "0.7", 3 or a Fraction exactly."""
    if isinstance(x, bool):
        raise ValueError(f"not a number: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(str(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise ValueError(f"not a number: {x!r}")


def frac_str(x) -> str:
    return str(Fraction(x))


# ---------------------------
# Subsets of states as bitmasks
# ---------------------------
def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_of(states: Iterable[int]) -> int:
    mask = 0
    for s in states:
        mask |= 1 << s
    return mask


def states_of(mask: int) -> List[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def subset_key(mask: int) -> str:
    return json.dumps(states_of(mask), separators=(",", ":"))


def parse_subset_key(key: str, limit: int = 64) -> int:
    """Read "[0,2]" as a mask; state indices must lie in 0..limit-1."""
    states = json.loads(key)
    if not isinstance(states, list) or any(not isinstance(s, int) or isinstance(s, bool) for s in states):
        raise ValueError(f"subset key must be a JSON list of state indices, got {key!r}")
    if any(not 0 <= s < limit for s in states):
        raise ValueError(f"subset key {key!r} mentions a state outside 0..{limit - 1}")
    return mask_of(states)
