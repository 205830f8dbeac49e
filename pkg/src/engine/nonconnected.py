from fractions import Fraction
from typing import List, Tuple

from ..models.errors import FairSliceError
from ..models.types import (
    ONE,
    ZERO,
    CakeInstance,
    FractionalAssignment,
    SegmentGrid,
    StandardLP,
    WelfareReport,
)
from ..utils.logging import get_logger
from .simplex import solve_lp

logger = get_logger(__name__)


def util_nonconnected(instance: CakeInstance) -> Tuple[FractionalAssignment, WelfareReport]:
    """Every grid interval goes whole to a player of maximum density there."""
    grid = SegmentGrid.from_instance(instance)
    J = len(grid.boundaries) - 1
    fractions = [[ZERO] * J for _ in range(instance.n)]
    for I in range(J):
        # max() keeps the first maximum, so ties go to the smallest index
        winner = max(range(instance.n), key=lambda i: grid.densities[i][I])
        fractions[winner][I] = ONE
    assignment = FractionalAssignment(grid=grid, fractions=tuple(tuple(r) for r in fractions))
    report = WelfareReport.from_utilities(assignment.utility(i) for i in range(instance.n))
    logger.info(f"Non-connected utilitarian optimum {report.utilitarian} over {J} intervals")
    return assignment, report


def variable_index(grid: SegmentGrid, player: int, interval: int) -> int:
    """Column of x_i^I; column 0 is t."""
    return 1 + player * (len(grid.boundaries) - 1) + interval


def build_egal_lp(grid: SegmentGrid) -> StandardLP:
    """maximize t s.t. t <= sum_I value_i(I) x_i^I for every i, sum_i x_i^I <= 1 for every I."""
    n = len(grid.densities)
    J = len(grid.boundaries) - 1
    width = 1 + n * J
    objective = [ZERO] * width
    objective[0] = ONE
    rows: List[List[Fraction]] = []
    for i in range(n):
        row = [ZERO] * width
        row[0] = ONE
        for I in range(J):
            row[variable_index(grid, i, I)] = -grid.value(i, I)
        rows.append(row)
    for I in range(J):
        row = [ZERO] * width
        for i in range(n):
            row[variable_index(grid, i, I)] = ONE
        rows.append(row)
    return StandardLP(
        objective=tuple(objective),
        matrix=tuple(tuple(r) for r in rows),
        rhs=tuple([ZERO] * n + [ONE] * J),
    )


def egal_nonconnected(instance: CakeInstance) -> Tuple[Fraction, FractionalAssignment]:
    grid = SegmentGrid.from_instance(instance)
    J = len(grid.boundaries) - 1
    solution = solve_lp(build_egal_lp(grid))
    if solution.status != "optimal":
        raise FairSliceError(f"egalitarian LP ended {solution.status}")
    fractions = tuple(
        tuple(solution.x[variable_index(grid, i, I)] for I in range(J))
        for i in range(instance.n)
    )
    logger.info(f"Non-connected egalitarian optimum {solution.value} over {J} intervals")
    return solution.value, FractionalAssignment(grid=grid, fractions=fractions)
