import math
from bisect import bisect_left
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..core.valuation import inv_eval
from ..core.welfare import welfare, welfare_discrete
from ..models.errors import InvalidInputError, NotEnoughValue, ResourceGuardExceeded
from ..models.types import (
    ONE,
    ZERO,
    CakeInstance,
    ConnectedDivision,
    DiscreteDivision,
    DiscreteInstance,
    EgalCutVector,
    ItemRange,
    UtilTable,
    WelfareReport,
)
from ..utils.logging import get_logger
from .discretize import lift_division, run_discretization, to_discrete

logger = get_logger(__name__)

DEFAULT_MAX_PLAYERS = 20


def _check_players(n: int, max_players: int):
    if n > max_players:
        logger.warning(f"{n} players exceed the subset-DP bound of {max_players}")
        raise ResourceGuardExceeded(f"{n} players exceed the bound {max_players}")


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _scaled_rows(D: DiscreteInstance) -> Tuple[List[List[int]], int]:
    scale = 1
    for row in D.values:
        for v in row:
            scale = math.lcm(scale, v.denominator)
    return [[int(v * scale) for v in row] for row in D.values], scale


# ---------------------------
# Utilitarian subset DP
# ---------------------------

def build_util_table(D: DiscreteInstance, max_players: int = DEFAULT_MAX_PLAYERS) -> UtilTable:
    """u_j^{(S,k)}: best split of items 1..j among exactly S with k holding item j."""
    _check_players(D.n, max_players)
    n, m = D.n, D.m
    vals, scale = _scaled_rows(D)
    rows: Dict[Tuple[int, int], List[Optional[int]]] = {
        (mask, k): [None] * m for mask in range(1, 1 << n) for k in _bits(mask)
    }
    best: Dict[int, List[Optional[int]]] = {mask: [None] * m for mask in range(1, 1 << n)}
    for k in range(n):
        rows[(1 << k, k)][0] = vals[k][0]
        best[1 << k][0] = vals[k][0]
    for j in range(1, m):
        for mask in range(1, 1 << n):
            top = None
            for k in _bits(mask):
                same = rows[(mask, k)][j - 1]
                rest = mask ^ (1 << k)
                other = best[rest][j - 1] if rest else None
                if same is None and other is None:
                    continue
                if same is None or (other is not None and other > same):
                    cand = other
                else:
                    cand = same
                entry = cand + vals[k][j]
                rows[(mask, k)][j] = entry
                if top is None or entry > top:
                    top = entry
            best[mask][j] = top
    return UtilTable(n=n, m=m, scale=scale, rows=rows)


def _reconstruct_util(table: UtilTable, vals: List[List[int]]) -> DiscreteDivision:
    n, m = table.n, table.m
    mask, k, top = 0, 0, None
    for (msk, kk), row in sorted(table.rows.items()):
        if row[m - 1] is not None and (top is None or row[m - 1] > top):
            mask, k, top = msk, kk, row[m - 1]
    pieces: List[Optional[ItemRange]] = [None] * n
    j = m - 1
    end = j
    while True:
        cur = table.rows[(mask, k)][j]
        if j == 0:
            pieces[k] = (1, end + 1)
            break
        same = table.rows[(mask, k)][j - 1]
        if same is not None and same + vals[k][j] == cur:
            j -= 1
            continue
        pieces[k] = (j + 1, end + 1)
        mask ^= 1 << k
        want = cur - vals[k][j]
        k = next(i for i in _bits(mask) if table.rows[(mask, i)][j - 1] == want)
        j -= 1
        end = j
    return DiscreteDivision(pieces=tuple(pieces))


def fpt_util_discrete(
    D: DiscreteInstance, max_players: int = DEFAULT_MAX_PLAYERS
) -> Tuple[DiscreteDivision, WelfareReport]:
    table = build_util_table(D, max_players)
    vals, _ = _scaled_rows(D)
    division = _reconstruct_util(table, vals)
    report = welfare_discrete(D, division)
    logger.info(f"Exact discrete utilitarian optimum {report.utilitarian} over {D.m} items")
    return division, report


def fpt_util(
    instance: CakeInstance, eps: Fraction, max_players: int = DEFAULT_MAX_PLAYERS
) -> Tuple[ConnectedDivision, WelfareReport]:
    eps = Fraction(eps)
    if not ZERO < eps <= ONE:
        raise InvalidInputError(f"eps must lie in (0,1], got {eps}")
    _check_players(instance.n, max_players)
    # additive loss (n-1)*eps' becomes a (1+eps) factor because OPT >= 1
    fine = eps / (2 * (instance.n - 1)) if instance.n > 1 else eps
    cut_set = run_discretization(instance, fine)
    division, _ = fpt_util_discrete(to_discrete(instance, cut_set), max_players)
    lifted = lift_division(division, cut_set, instance.n)
    return lifted, welfare(instance, lifted)


# ---------------------------
# Continuous egalitarian search
# ---------------------------

def egal_cut_vector(instance: CakeInstance, B: Fraction) -> EgalCutVector:
    n = instance.n
    entries: Dict[int, Optional[Fraction]] = {0: ZERO}
    last: Dict[int, int] = {}
    for mask in range(1, 1 << n):
        best, choice = None, -1
        for i in _bits(mask):
            prev = entries[mask ^ (1 << i)]
            if prev is None:
                continue
            try:
                b = inv_eval(instance.players[i], prev, B)
            except NotEnoughValue:
                continue
            if best is None or b < best:
                best, choice = b, i
        entries[mask] = best
        if best is not None:
            last[mask] = choice
    return EgalCutVector(bound=B, entries=entries, last_player=last)


def egal_feasible(instance: CakeInstance, B: Fraction) -> Optional[ConnectedDivision]:
    """Division giving every player at least B, or None when C([n]) is infinite."""
    B = Fraction(B)
    if not ZERO <= B <= ONE:
        raise InvalidInputError(f"B must lie in [0,1], got {B}")
    vector = egal_cut_vector(instance, B)
    mask = (1 << instance.n) - 1
    if vector.entries[mask] is None:
        return None
    placed: List[int] = []
    while mask:
        i = vector.last_player[mask]
        placed.append(i)
        mask ^= 1 << i
    placed.reverse()
    cuts, prefix = [], 0
    for i in placed[:-1]:
        prefix |= 1 << i
        cuts.append(vector.entries[prefix])
    return ConnectedDivision(cuts=tuple(cuts), order=tuple(placed))


def search_iterations(n: int, eps: Fraction) -> int:
    """Smallest k with 2^k >= n / eps."""
    target = Fraction(n) / eps
    k = 0
    while 2 ** k < target:
        k += 1
    return k


def egal_binary_search(
    instance: CakeInstance, eps: Fraction, max_players: int = DEFAULT_MAX_PLAYERS
) -> Tuple[Fraction, Fraction, ConnectedDivision]:
    """(lo, hi, witness): lo feasible with witness, hi - lo <= eps / n."""
    eps = Fraction(eps)
    if not ZERO < eps < ONE:
        raise InvalidInputError(f"eps must lie in (0,1), got {eps}")
    _check_players(instance.n, max_players)
    lo, hi = ZERO, ONE
    witness = egal_feasible(instance, ZERO)
    for _ in range(search_iterations(instance.n, eps)):
        mid = (lo + hi) / 2
        found = egal_feasible(instance, mid)
        logger.debug(f"egal search: B={mid} {'feasible' if found else 'infeasible'}")
        if found is not None:
            lo, witness = mid, found
        else:
            hi = mid
    logger.info(f"Egalitarian search bracket [{lo}, {hi}] for {instance.n} players")
    return lo, hi, witness


def fpt_egal(
    instance: CakeInstance, eps: Fraction, max_players: int = DEFAULT_MAX_PLAYERS
) -> Tuple[Fraction, ConnectedDivision]:
    lo, _, witness = egal_binary_search(instance, eps, max_players)
    return lo, witness


# ---------------------------
# Discrete egalitarian: leftmost packing
# ---------------------------

class PackingSolver:
    """Decides discrete egalitarian feasibility by packing players from the left.

    C(S) is the fewest leading items that give every player of S a piece worth
    the target; values are scaled to integers once and reused across probes.
    """

    def __init__(self, D: DiscreteInstance, max_players: int = DEFAULT_MAX_PLAYERS):
        _check_players(D.n, max_players)
        self.D = D
        self.n, self.m = D.n, D.m
        self.vals, self.scale = _scaled_rows(D)
        self.prefix = []
        for row in self.vals:
            acc, sums = 0, [0]
            for v in row:
                acc += v
                sums.append(acc)
            self.prefix.append(sums)

    def target(self, B: Fraction) -> int:
        return math.ceil(Fraction(B) * self.scale)

    def candidates(self) -> List[int]:
        values = {0}
        for sums in self.prefix:
            for s in range(self.m):
                for t in range(s + 1, self.m + 1):
                    values.add(sums[t] - sums[s])
        return sorted(values)

    def pack(self, target: int) -> Optional[DiscreteDivision]:
        n, m = self.n, self.m
        full = (1 << n) - 1
        C: List[Optional[int]] = [None] * (full + 1)
        last = [-1] * (full + 1)
        C[0] = 0
        prefix = self.prefix
        for mask in range(1, full + 1):
            best, choice = None, -1
            rest = mask
            while rest:
                low = rest & -rest
                rest ^= low
                prev = C[mask ^ low]
                if prev is None:
                    continue
                k = low.bit_length() - 1
                sums = prefix[k]
                b = bisect_left(sums, sums[prev] + target, prev) if target else prev
                if b <= m and (best is None or b < best):
                    best, choice = b, k
            C[mask] = best
            last[mask] = choice
        if C[full] is None:
            return None
        pieces: List[Optional[ItemRange]] = [None] * n
        mask, end = full, m
        while mask:
            k = last[mask]
            prev = C[mask ^ (1 << k)]
            stop = end if mask == full else C[mask]
            pieces[k] = (prev + 1, stop) if stop > prev else None
            mask ^= 1 << k
        return DiscreteDivision(pieces=tuple(pieces))


def egal_feasible_discrete(
    D: DiscreteInstance, B: Fraction, max_players: int = DEFAULT_MAX_PLAYERS
) -> Optional[DiscreteDivision]:
    solver = PackingSolver(D, max_players)
    return solver.pack(solver.target(B))


def egal_exact_discrete(
    D: DiscreteInstance, max_players: int = DEFAULT_MAX_PLAYERS
) -> Tuple[Fraction, DiscreteDivision]:
    """Exact discrete egalitarian optimum: largest piece value that still packs.

    The optimum is always the value of some item range, so searching those
    candidates with the packing test gives the same maximum as a max-min DP over
    (player set, item prefix), and the packing witness serves as the division.
    """
    solver = PackingSolver(D, max_players)
    values = solver.candidates()
    lo, hi = 0, len(values) - 1
    witness = solver.pack(0)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        found = solver.pack(values[mid])
        if found is not None:
            lo, witness = mid, found
        else:
            hi = mid - 1
    optimum = Fraction(values[lo], solver.scale)
    logger.info(f"Exact discrete egalitarian optimum {optimum} for {D.n} players")
    return optimum, witness
