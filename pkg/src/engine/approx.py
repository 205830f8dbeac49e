from fractions import Fraction
from typing import List, Optional, Set, Tuple

from ..core.welfare import welfare, welfare_discrete
from ..models.types import (
    ZERO,
    ApproxTrace,
    CakeInstance,
    ConnectedDivision,
    DiscreteDivision,
    DiscreteInstance,
    TraceStep,
    WelfareReport,
)
from ..utils.logging import get_logger
from .discretize import lift_division, run_discretization, to_discrete

logger = get_logger(__name__)


class UtilitarianApproximator:
    """Grants item ranges ending at t whenever the taker values them at twice their cost.

    Each (player, s, t) is granted at most once, which bounds the number of
    grants by n*m^2 even when zero-valued ranges satisfy the grant condition.
    """

    def __init__(self, D: DiscreteInstance, trace: bool = False):
        self.D = D
        self.n, self.m = D.n, D.m
        self.prefix = []
        for row in D.values:
            acc, sums = ZERO, [ZERO]
            for v in row:
                acc += v
                sums.append(acc)
            self.prefix.append(sums)
        self.pieces: List[Optional[Tuple[int, int]]] = [None] * self.n
        self.owner: List[int] = [-1] * (self.m + 1)
        self.ever = [[False] * (self.m + 1) for _ in range(self.n)]
        self.ever_sum = ZERO
        self.granted: Set[Tuple[int, int, int]] = set()
        self.trace: Optional[ApproxTrace] = ApproxTrace() if trace else None

    def value(self, player: int, s: int, t: int) -> Fraction:
        if s > t:
            return ZERO
        return self.prefix[player][t] - self.prefix[player][s - 1]

    def owned_sum(self) -> Fraction:
        return sum(
            (self.value(i, *p) for i, p in enumerate(self.pieces) if p is not None), ZERO
        )

    def _best_grant(self, t: int) -> Optional[Tuple[int, int, Fraction, Fraction]]:
        best = None
        best_gain = None
        for k in range(self.n):
            piece = self.pieces[k]
            own = self.value(k, *piece) if piece is not None else ZERO
            # others[s] = V_{-k}(s, t), accumulated right to left
            others = [ZERO] * (t + 2)
            for s in range(t, 0, -1):
                holder = self.owner[s]
                extra = self.D.values[holder][s - 1] if holder not in (-1, k) else ZERO
                others[s] = others[s + 1] + extra
            for s in range(1, t + 1):
                if (k, s, t) in self.granted:
                    continue
                gain = self.value(k, s, t) - 2 * (own + others[s])
                if gain >= 0 and (best_gain is None or gain > best_gain):
                    best_gain = gain
                    best = (k, s, own, others[s])
        return best

    def _grant(self, k: int, s: int, t: int):
        self.granted.add((k, s, t))
        old = self.pieces[k]
        if old is not None:
            for j in range(old[0], old[1] + 1):
                self.owner[j] = -1
        for i, piece in enumerate(self.pieces):
            if i == k or piece is None:
                continue
            si, ti = piece
            if si >= s:
                self.pieces[i] = None
            elif s <= ti:
                self.pieces[i] = (si, s - 1) if s - 1 >= si else None
        self.pieces[k] = (s, t)
        for j in range(s, t + 1):
            self.owner[j] = k
            if not self.ever[k][j]:
                self.ever[k][j] = True
                self.ever_sum += self.D.values[k][j - 1]

    def run(self) -> DiscreteDivision:
        for t in range(1, self.m + 1):
            while True:
                best = self._best_grant(t)
                if best is None:
                    break
                k, s, own, others = best
                self._grant(k, s, t)
                logger.debug(f"approx: t={t} grant ({s},{t}) to player {k}")
                if self.trace is not None:
                    self.trace.steps.append(
                        TraceStep(
                            t=t,
                            player=k,
                            start=s,
                            own_cost=own,
                            others_cost=others,
                            owned_sum=self.owned_sum(),
                            ever_owned_sum=self.ever_sum,
                        )
                    )
        return DiscreteDivision(pieces=tuple(self.pieces))


def approx_util_discrete(
    D: DiscreteInstance, trace: bool = False
) -> Tuple[DiscreteDivision, WelfareReport, Optional[ApproxTrace]]:
    approximator = UtilitarianApproximator(D, trace=trace)
    division = approximator.run()
    report = welfare_discrete(D, division)
    logger.info(
        f"Approximation granted {len(approximator.granted)} ranges; utilitarian={report.utilitarian}"
    )
    return division, report, approximator.trace


def approx_util(instance: CakeInstance, eps: Fraction) -> Tuple[ConnectedDivision, WelfareReport]:
    cut_set = run_discretization(instance, eps)
    D = to_discrete(instance, cut_set)
    division, _, _ = approx_util_discrete(D)
    lifted = lift_division(division, cut_set, instance.n)
    return lifted, welfare(instance, lifted)
