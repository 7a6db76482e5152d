# quallogic/app/simplex.py
"""Exact two-phase simplex over Fraction with Bland's rule.

Solves  max c·x  subject to  A x = b,  x ≥ 0.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    value: Optional[Fraction] = None
    x: Optional[Tuple[Fraction, ...]] = None


class SimplexTableau:
    def __init__(self, rows: List[List[Fraction]], rhs: List[Fraction], basis: List[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    @property
    def width(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def pivot(self, i: int, j: int):
        row = self.rows[i]
        piv = row[j]
        self.rows[i] = [a / piv for a in row]
        self.rhs[i] /= piv
        row = self.rows[i]
        for k, other in enumerate(self.rows):
            f = other[j]
            if k == i or f == 0:
                continue
            self.rows[k] = [a - f * b for a, b in zip(other, row)]
            self.rhs[k] -= f * self.rhs[i]
        self.basis[i] = j
        self.pivots += 1

    def reduced_costs(self, cost: Sequence[Fraction]) -> List[Fraction]:
        out = list(cost)
        for i, bv in enumerate(self.basis):
            cb = cost[bv]
            if cb:
                out = [r - cb * a for r, a in zip(out, self.rows[i])]
        return out

    def bland_step(self, cost: Sequence[Fraction], allowed: int) -> str:
        reduced = self.reduced_costs(cost)
        entering = next((j for j in range(allowed) if reduced[j] > 0), None)
        if entering is None:
            return OPTIMAL
        try:
            _, _, i = min((self.rhs[i] / row[entering], self.basis[i], i)
                          for i, row in enumerate(self.rows) if row[entering] > 0)
        except ValueError:
            return UNBOUNDED
        self.pivot(i, entering)
        return "go_on"

    def run(self, cost: Sequence[Fraction], allowed: int) -> str:
        while True:
            status = self.bland_step(cost, allowed)
            if status != "go_on":
                return status

    def value(self, cost: Sequence[Fraction]) -> Fraction:
        return sum((cost[bv] * self.rhs[i] for i, bv in enumerate(self.basis)), Fraction(0))

    def solution(self, n: int) -> Tuple[Fraction, ...]:
        x = [Fraction(0)] * n
        for i, bv in enumerate(self.basis):
            if bv < n:
                x[bv] = self.rhs[i]
        return tuple(x)


def maximize(c: Sequence[Fraction], a_eq: Sequence[Sequence[Fraction]], b_eq: Sequence[Fraction]) -> LPResult:
    n = len(c)
    m = len(a_eq)
    rows, rhs = [], []
    for i, (row, b) in enumerate(zip(a_eq, b_eq)):
        sign = -1 if b < 0 else 1
        artificial = [Fraction(0)] * m
        artificial[i] = Fraction(1)
        rows.append([Fraction(sign * a) for a in row] + artificial)
        rhs.append(Fraction(sign * b))
    t = SimplexTableau(rows, rhs, [n + i for i in range(m)])

    # phase 1: drive the artificial variables to zero
    phase1 = [Fraction(0)] * n + [Fraction(-1)] * m
    t.run(phase1, n + m)
    if t.value(phase1) < 0:
        logger.debug("simplex: infeasible after %d pivots", t.pivots)
        return LPResult(INFEASIBLE)
    keep = []
    for i in range(m):
        if t.basis[i] >= n:
            j = next((j for j in range(n) if t.rows[i][j] != 0), None)
            if j is None:
                continue
            t.pivot(i, j)
        keep.append(i)
    t = SimplexTableau([t.rows[i][:n] for i in keep], [t.rhs[i] for i in keep], [t.basis[i] for i in keep])

    cost = [Fraction(x) for x in c]
    if t.rows and t.run(cost, n) == UNBOUNDED:
        logger.debug("simplex: unbounded after %d pivots", t.pivots)
        return LPResult(UNBOUNDED)
    if not t.rows:
        # no constraints left: optimal only if nothing improves
        if any(x > 0 for x in cost):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, Fraction(0), tuple([Fraction(0)] * n))
    return LPResult(OPTIMAL, t.value(cost), t.solution(n))
