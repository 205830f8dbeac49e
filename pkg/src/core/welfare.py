from typing import List, Optional, Union

from ..models.errors import InvalidDivisionError
from ..models.types import (
    ONE,
    ZERO,
    CakeInstance,
    ConnectedDivision,
    DiscreteDivision,
    DiscreteInstance,
    WelfareReport,
)
from .valuation import eval_interval


def validate_division(
    d: Union[ConnectedDivision, DiscreteDivision],
    n: Optional[int] = None,
    m: Optional[int] = None,
) -> List[str]:
    """Every broken invariant of d; an empty list means the division is valid."""
    if isinstance(d, ConnectedDivision):
        return _connected_violations(d, n)
    return _discrete_violations(d, n, m)


def _connected_violations(d: ConnectedDivision, n: Optional[int]) -> List[str]:
    violations: List[str] = []
    players = len(d.order)
    if n is not None and players != n:
        violations.append(f"order has {players} players, expected {n}")
    if len(d.cuts) != max(players - 1, 0):
        violations.append(f"expected {max(players - 1, 0)} cuts, got {len(d.cuts)}")
    if any(c < ZERO or c > ONE for c in d.cuts):
        violations.append("cut outside [0,1]")
    if any(a > b for a, b in zip(d.cuts, d.cuts[1:])):
        violations.append("cuts unsorted")
    if sorted(d.order) != list(range(players)):
        violations.append("not a permutation")
    return violations


def _discrete_violations(d: DiscreteDivision, n: Optional[int], m: Optional[int]) -> List[str]:
    violations: List[str] = []
    if n is not None and d.n != n:
        violations.append(f"division has {d.n} players, expected {n}")
    owner = {}
    for player, piece in enumerate(d.pieces):
        if piece is None:
            continue
        s, t = piece
        if s < 1 or s > t or (m is not None and t > m):
            violations.append(f"player {player + 1} range ({s},{t}) out of bounds")
            continue
        for item in range(s, t + 1):
            if item in owner:
                violations.append(f"overlap at item {item}")
                break
            owner[item] = player
    return violations


def welfare(instance: CakeInstance, d: ConnectedDivision) -> WelfareReport:
    if not isinstance(d, ConnectedDivision):
        raise InvalidDivisionError(["a cake instance needs a connected division"])
    violations = validate_division(d, n=instance.n)
    if violations:
        raise InvalidDivisionError(violations)
    bounds = d.boundaries()
    utilities = [ZERO] * instance.n
    for j, player in enumerate(d.order):
        utilities[player] = eval_interval(instance.players[player], bounds[j], bounds[j + 1])
    return WelfareReport.from_utilities(utilities)


def welfare_discrete(D: DiscreteInstance, d: DiscreteDivision) -> WelfareReport:
    if not isinstance(d, DiscreteDivision):
        raise InvalidDivisionError(["a discrete instance needs an item division"])
    violations = validate_division(d, n=D.n, m=D.m)
    if violations:
        raise InvalidDivisionError(violations)
    return WelfareReport.from_utilities(D.range_value(i, piece) for i, piece in enumerate(d.pieces))
