from bisect import bisect_left
from fractions import Fraction
from typing import List

from ..core.valuation import eval_interval, inv_eval
from ..core.welfare import validate_division
from ..models.errors import InvalidDivisionError, InvalidInputError, NotEnoughValue
from ..models.types import (
    ONE,
    ZERO,
    CakeInstance,
    ConnectedDivision,
    CutSet,
    DiscreteDivision,
    DiscreteInstance,
)
from ..utils.logging import get_logger

logger = get_logger(__name__)


def run_discretization(instance: CakeInstance, eps: Fraction) -> CutSet:
    """Cut wherever the first player has seen eps of value since the previous cut."""
    eps = Fraction(eps)
    if eps <= 0:
        raise InvalidInputError(f"eps must be positive, got {eps}")
    a = ZERO
    points: List[Fraction] = [ZERO]
    while any(eval_interval(v, a, ONE) > eps for v in instance.players):
        candidates = []
        for v in instance.players:
            try:
                candidates.append(inv_eval(v, a, eps))
            except NotEnoughValue:
                continue
        a = min(candidates)
        points.append(a)
        logger.debug(f"discretize: cut at {a}")
    if points[-1] != ONE:
        points.append(ONE)
    logger.info(f"Discretized {instance.n} players with eps={eps} into {len(points) - 1} items")
    return CutSet(points=tuple(points), epsilon=eps)


def to_discrete(instance: CakeInstance, C: CutSet) -> DiscreteInstance:
    pairs = list(zip(C.points, C.points[1:]))
    return DiscreteInstance(
        values=tuple(
            tuple(eval_interval(v, a, b) for a, b in pairs) for v in instance.players
        )
    )


def snap_division(instance: CakeInstance, d: ConnectedDivision, C: CutSet) -> ConnectedDivision:
    """Move every cut right to the leftmost grid point at or after it."""
    violations = validate_division(d, n=instance.n)
    if violations:
        raise InvalidDivisionError(violations)
    cuts = tuple(C.points[bisect_left(C.points, x)] for x in d.cuts)
    return ConnectedDivision(cuts=cuts, order=d.order)


def lift_division(d: DiscreteDivision, C: CutSet, n: int) -> ConnectedDivision:
    """Continuous division cutting at the grid points that bound each piece.

    Unallocated items go to the piece on their left (a leading gap to the first
    piece); Empty players receive zero-length intervals at the right end.
    """
    violations = validate_division(d, n=n, m=C.m)
    if violations:
        raise InvalidDivisionError(violations)
    owned = sorted((piece[0], player) for player, piece in enumerate(d.pieces) if piece is not None)
    empty = [player for player, piece in enumerate(d.pieces) if piece is None]
    if not owned:
        # a connected division hands out the whole cake; the first player takes it
        owned, empty = [(1, empty[0])], empty[1:]
    cuts = [C.points[s - 1] for s, _ in owned[1:]]
    cuts.extend(ONE for _ in empty)
    order = tuple(player for _, player in owned) + tuple(empty)
    return ConnectedDivision(cuts=tuple(cuts), order=order)
