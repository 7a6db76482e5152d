# quallogic/app/classical.py
"""Classical evaluation over sets of states, one bit per state."""
import logging
from functools import lru_cache
from typing import Dict, List, Mapping, Tuple

from quallogic.app.config import MAX_CPL_VARIABLES
from quallogic.app.errors import BoundError, LanguageError, UnboundVariableError
from quallogic.app.syntax import Formula, Kind, Lang, SYMBOL, node, variables

logger = logging.getLogger(__name__)


def extension(f: Formula, v: Mapping[str, int], full: int) -> int:
    """‖f‖ as a bitmask, given ‖p‖ for each variable and the mask of all states."""
    k = f.kind
    if k == Kind.VAR:
        try:
            return v[f.var]
        except KeyError:
            raise UnboundVariableError(f.var) from None
    if k == Kind.TOP:
        return full
    if k == Kind.BOT:
        return 0
    if k == Kind.NOT:
        return full & ~extension(f.children[0], v, full)
    if k == Kind.AND:
        return extension(f.left, v, full) & extension(f.right, v, full)
    if k == Kind.OR:
        return extension(f.left, v, full) | extension(f.right, v, full)
    if k == Kind.MIMP:
        return (full & ~extension(f.left, v, full)) | extension(f.right, v, full)
    if k == Kind.EQUIV:
        return full & ~(extension(f.left, v, full) ^ extension(f.right, v, full))
    raise LanguageError(f.lang.value, SYMBOL[k], f"{SYMBOL[k]!r} is not a classical connective")


@lru_cache(maxsize=None)
def _assignment_masks(n: int) -> Tuple[int, ...]:
    # row j of the truth table assigns variable i the bit (j >> i) & 1
    rows = 1 << n
    everything = (1 << rows) - 1
    masks = []
    for i in range(n):
        half = 1 << i
        block = ((1 << half) - 1) << half
        period = half << 1
        masks.append(block * (everything // ((1 << period) - 1)))
    return tuple(masks)


def _table_masks(f: Formula) -> Tuple[List[str], Dict[str, int], int]:
    names = sorted(variables(f))
    if len(names) > MAX_CPL_VARIABLES:
        raise BoundError(f"{len(names)} variables exceed the truth-table limit of {MAX_CPL_VARIABLES}")
    masks = _assignment_masks(len(names))
    return names, dict(zip(names, masks)), (1 << (1 << len(names))) - 1


@lru_cache(maxsize=1 << 14)
def cpl_valid(f: Formula) -> bool:
    """Truth-table validity of a classical formula."""
    names, v, full = _table_masks(f)
    return extension(f, v, full) == full


def cpl_entails(premise: Formula, conclusion: Formula) -> bool:
    return cpl_valid(node(Kind.MIMP, premise, conclusion, lang=Lang.CPL))


def truth_table(f: Formula) -> List[Tuple[Dict[str, bool], bool]]:
    names, v, full = _table_masks(f)
    ext = extension(f, v, full)
    rows = []
    for j in range(1 << len(names)):
        row = {p: bool((j >> i) & 1) for i, p in enumerate(names)}
        rows.append((row, bool((ext >> j) & 1)))
    return rows
