from fractions import Fraction
from typing import List, Optional

from ..models.types import ZERO, LPSolution, StandardLP
from ..utils.logging import get_logger

logger = get_logger(__name__)


class SimplexTableau:
    """Exact two-phase simplex for max c.x, A x <= b, x >= 0.

    Columns are the structural variables, one slack per row, then one
    artificial per row with a negative right-hand side. Pivoting follows
    Bland's rule, so degenerate problems terminate.
    """

    def __init__(self, lp: StandardLP):
        self.lp = lp
        self.n = len(lp.objective)
        self.m = len(lp.rhs)
        negative = [i for i, b in enumerate(lp.rhs) if b < 0]
        self.artificial_start = self.n + self.m
        self.width = self.artificial_start + len(negative)
        self.A: List[List[Fraction]] = []
        self.b: List[Fraction] = []
        self.basis: List[int] = []
        for i, (row, rhs) in enumerate(zip(lp.matrix, lp.rhs)):
            sign = -1 if rhs < 0 else 1
            line = [sign * Fraction(a) for a in row]
            line += [Fraction(sign) if j == i else ZERO for j in range(self.m)]
            line += [ZERO] * len(negative)
            if sign < 0:
                col = self.artificial_start + negative.index(i)
                line[col] = Fraction(1)
                self.basis.append(col)
            else:
                self.basis.append(self.n + i)
            self.A.append(line)
            self.b.append(sign * Fraction(rhs))
        self.pivots = 0

    def pivot(self, i: int, j: int):
        piv = self.A[i][j]
        self.A[i] = [a / piv for a in self.A[i]]
        self.b[i] /= piv
        for k in range(self.m):
            if k != i and self.A[k][j] != 0:
                f = self.A[k][j]
                self.A[k] = [a - f * p for a, p in zip(self.A[k], self.A[i])]
                self.b[k] -= f * self.b[i]
        logger.debug(f"simplex: pivot column {j} into row {i} (leaving {self.basis[i]})")
        self.basis[i] = j
        self.pivots += 1

    def _reduced(self, cost: List[Fraction], j: int) -> Fraction:
        return cost[j] - sum(
            (cost[self.basis[i]] * self.A[i][j] for i in range(self.m)), ZERO
        )

    def optimize(self, cost: List[Fraction], allowed: int) -> str:
        """Maximize cost over columns < allowed; 'optimal' or 'unbounded'."""
        while True:
            entering = next(
                (j for j in range(allowed) if j not in self.basis and self._reduced(cost, j) > 0),
                None,
            )
            if entering is None:
                return "optimal"
            rows = [
                (self.b[i] / self.A[i][entering], self.basis[i], i)
                for i in range(self.m)
                if self.A[i][entering] > 0
            ]
            if not rows:
                return "unbounded"
            _, _, leave = min(rows)
            self.pivot(leave, entering)

    def values(self) -> List[Fraction]:
        x = [ZERO] * self.width
        for i, col in enumerate(self.basis):
            x[col] = self.b[i]
        return x

    def drive_out_artificials(self):
        for i, col in enumerate(self.basis):
            if col < self.artificial_start:
                continue
            j = next(
                (j for j in range(self.artificial_start) if self.A[i][j] != 0), None
            )
            # a row without structural or slack entries is redundant; its artificial stays at 0
            if j is not None:
                self.pivot(i, j)

    def solve(self) -> LPSolution:
        if self.width > self.artificial_start:
            phase_one = [ZERO] * self.artificial_start + [Fraction(-1)] * (
                self.width - self.artificial_start
            )
            self.optimize(phase_one, self.width)
            if sum(self.values()[self.artificial_start:], ZERO) > 0:
                logger.info("LP infeasible")
                return LPSolution(status="infeasible")
            self.drive_out_artificials()
        cost = [Fraction(c) for c in self.lp.objective] + [ZERO] * (self.width - self.n)
        status = self.optimize(cost, self.artificial_start)
        if status == "unbounded":
            logger.info("LP unbounded")
            return LPSolution(status="unbounded")
        x = tuple(self.values()[: self.n])
        value = sum((Fraction(c) * v for c, v in zip(self.lp.objective, x)), ZERO)
        logger.debug(f"simplex: optimum {value} after {self.pivots} pivots")
        return LPSolution(status="optimal", value=value, x=x)


def solve_lp(lp: StandardLP) -> LPSolution:
    return SimplexTableau(lp).solve()


def check_solution(lp: StandardLP, x) -> Optional[str]:
    """First violated constraint of x as a message, or None when x is feasible."""
    if len(x) != len(lp.objective):
        return f"expected {len(lp.objective)} variables, got {len(x)}"
    if any(v < 0 for v in x):
        return "negative variable"
    for i, (row, rhs) in enumerate(zip(lp.matrix, lp.rhs)):
        lhs = sum((Fraction(a) * v for a, v in zip(row, x)), ZERO)
        if lhs > rhs:
            return f"row {i}: {lhs} > {rhs}"
    return None
