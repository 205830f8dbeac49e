from fractions import Fraction
from math import comb, perm
from typing import Iterator, List, Optional, Tuple

from ..models.errors import InvalidInputError, ResourceGuardExceeded
from ..models.types import ZERO, DiscreteDivision, DiscreteInstance, ItemRange, Objective, WelfareReport
from ..utils.logging import get_logger

logger = get_logger(__name__)

DEFAULT_ENUMERATION_LIMIT = 10_000_000


def count_divisions(n: int, m: int) -> int:
    """Connected divisions of m items among n players with every item allocated."""
    return sum(comb(m - 1, k - 1) * perm(n, k) for k in range(1, min(n, m) + 1))


class DivisionEnumerator:
    """Streams every division once: the block starting at each item goes to an unused player."""

    def __init__(self, n: int, m: int, limit: int = DEFAULT_ENUMERATION_LIMIT):
        if n < 1 or m < 1:
            raise InvalidInputError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
        total = count_divisions(n, m)
        if total > limit:
            logger.warning(f"{total} divisions for n={n}, m={m} exceed the limit {limit}")
            raise ResourceGuardExceeded(f"{total} divisions exceed the enumeration limit {limit}")
        self.n, self.m = n, m
        self.total = total

    def __len__(self) -> int:
        return self.total

    def __iter__(self) -> Iterator[DiscreteDivision]:
        pieces: List[Optional[ItemRange]] = [None] * self.n
        yield from self._extend(1, pieces)

    def _extend(self, start: int, pieces: List[Optional[ItemRange]]) -> Iterator[DiscreteDivision]:
        for end in range(start, self.m + 1):
            for player in range(self.n):
                if pieces[player] is not None:
                    continue
                pieces[player] = (start, end)
                if end == self.m:
                    yield DiscreteDivision(pieces=tuple(pieces))
                else:
                    yield from self._extend(end + 1, pieces)
                pieces[player] = None


def enumerate_divisions(n: int, m: int, limit: int = DEFAULT_ENUMERATION_LIMIT) -> Iterator[DiscreteDivision]:
    return iter(DivisionEnumerator(n, m, limit))


def brute_force(
    D: DiscreteInstance, objective: Objective, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> Tuple[WelfareReport, DiscreteDivision]:
    if objective not in ("util", "egal"):
        raise InvalidInputError(f"unknown objective {objective!r}")
    prefix = []
    for row in D.values:
        acc, sums = ZERO, [ZERO]
        for v in row:
            acc += v
            sums.append(acc)
        prefix.append(sums)

    def utility(i: int, piece: Optional[ItemRange]) -> Fraction:
        return ZERO if piece is None else prefix[i][piece[1]] - prefix[i][piece[0] - 1]

    best: Optional[Tuple[WelfareReport, DiscreteDivision]] = None
    best_score = None
    for division in enumerate_divisions(D.n, D.m, limit):
        report = WelfareReport.from_utilities(utility(i, p) for i, p in enumerate(division.pieces))
        score = report.utilitarian if objective == "util" else report.egalitarian
        if best_score is None or score > best_score:
            best, best_score = (report, division), score
    logger.info(f"Brute force {objective} optimum {best_score} over {count_divisions(D.n, D.m)} divisions")
    return best
