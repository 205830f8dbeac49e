"""Hardness-reduction instance builders.

Both constructions are laid out on a wide cake [0, L] with integer or
fifth-unit coordinates and rescaled to [0, 1]; interval values are kept,
densities become value / rescaled length.
"""
from fractions import Fraction
from typing import List, Sequence, Tuple

from ..core.valuation import eval_interval, make_valuation
from ..models.errors import InvalidInstanceError
from ..models.types import ONE, CakeInstance, DiscreteInstance, McspInstance, PiecewiseConstantValuation, ThreeDMInstance
from ..utils.logging import get_logger

logger = get_logger(__name__)

# (a, b, value) on the wide cake
WideInterval = Tuple[Fraction, Fraction, Fraction]

# offsets inside one 3DM section of length 2
SECTION_GRID = tuple(
    Fraction(p) for p in ("0", "1/4", "1/2", "3/4", "1", "6/5", "7/5", "8/5", "9/5")
)


def _player(intervals: Sequence[WideInterval], length: Fraction) -> PiecewiseConstantValuation:
    v = make_valuation((a / length, b / length, value * length / (b - a)) for a, b, value in intervals)
    if v.total != ONE:
        raise InvalidInstanceError(f"generated player is worth {v.total}, not 1")
    return v


def _discretize(instance: CakeInstance, grid: Sequence[Fraction], length: Fraction) -> DiscreteInstance:
    points = [p / length for p in grid]
    return DiscreteInstance(
        values=tuple(
            tuple(eval_interval(v, a, b) for a, b in zip(points, points[1:]))
            for v in instance.players
        )
    )


def from_3dm(inst: ThreeDMInstance) -> Tuple[CakeInstance, DiscreteInstance, Fraction]:
    """Egalitarian instance whose optimum is >= 1/|E| on yes-instances and <= 1/(2|E|) otherwise.

    Players: one triplet player per z, m_x - 1 ground players per x (likewise
    per y) and three separation players per section.
    """
    E = len(inst.triples)
    if E < 1:
        raise InvalidInstanceError("3DM instance needs at least one triple")
    for axis, label in enumerate("xyz"):
        for element in range(1, inst.q + 1):
            if inst.multiplicity(axis, element) == 0:
                raise InvalidInstanceError(f"ground element {label}{element} occurs in no triple")
    for triple in inst.triples:
        if any(not 1 <= e <= inst.q for e in triple):
            raise InvalidInstanceError(f"triple {triple} outside 1..{inst.q}")
    length = Fraction(2 * E)
    half, quarter = Fraction(1, 2), Fraction(1, 4)

    def section(i: int) -> Fraction:
        return Fraction(2 * i)

    def complement(mult: int) -> List[WideInterval]:
        share = Fraction(E - mult, 2 * E * E)
        if share == 0:
            return []
        out = []
        for j in range(E):
            o = section(j)
            out.append((o + Fraction(6, 5), o + Fraction(7, 5), share))
            out.append((o + Fraction(8, 5), o + Fraction(9, 5), share))
        return out

    players: List[PiecewiseConstantValuation] = []
    names: List[str] = []
    for z in range(1, inst.q + 1):
        intervals: List[WideInterval] = []
        for i, triple in enumerate(inst.triples):
            if triple[2] == z:
                o = section(i)
                intervals.append((o, o + quarter, Fraction(1, 2 * E)))
                intervals.append((o + 3 * quarter, o + 1, Fraction(1, 2 * E)))
        players.append(_player(intervals + complement(inst.multiplicity(2, z)), length))
        names.append(f"z{z}")
    for axis, label, lo in ((0, "x", quarter), (1, "y", half)):
        for element in range(1, inst.q + 1):
            mult = inst.multiplicity(axis, element)
            intervals = [
                (section(i) + lo, section(i) + lo + quarter, Fraction(1, E))
                for i, triple in enumerate(inst.triples)
                if triple[axis] == element
            ]
            v = _player(intervals + complement(mult), length)
            for copy in range(mult - 1):
                players.append(v)
                names.append(f"{label}{element}.{copy + 1}")
    for i in range(E):
        o = section(i)
        # normalized from "(2(j-1)+1, 3(j-1)+6/5)" and "(2(i-1)+9/5, 2(j-1)+2)"
        for k, (a, b) in enumerate(
            ((o + 1, o + Fraction(6, 5)), (o + Fraction(7, 5), o + Fraction(8, 5)), (o + Fraction(9, 5), o + 2))
        ):
            players.append(_player([(a, b, ONE)], length))
            names.append(f"s{3 * i + k + 1}")
    instance = CakeInstance(players=tuple(players), names=tuple(names))
    grid = [section(i) + p for i in range(E) for p in SECTION_GRID] + [length]
    logger.info(f"3DM reduction: {instance.n} players on {len(grid) - 1} items")
    return instance, _discretize(instance, grid, length), Fraction(1, E)


def _segment_compensation(C: int, size: int, j: int) -> List[Tuple[int, int]]:
    """Compensation units of segment player j (1-based) in a family of the given size."""
    if size == 2:
        # the general endpoints leave [C, C+2] here; both players share the family's two units
        return [(C, C + 1), (C + 1, C + 2)]
    if j == 1:
        return [(C + 1, C + 2), (C + 3, C + 4)]
    if j == size:
        return [(C + 2 * size - 5, C + 2 * size - 4), (C + 2 * size - 3, C + 2 * size - 2)]
    # normalized from "(C_i+2C_i-3, S+2j-2)"
    return [(C + 2 * j - 3, C + 2 * j - 2), (C + 2 * j - 1, C + 2 * j)]


def from_mcsp(inst: McspInstance) -> Tuple[CakeInstance, DiscreteInstance, Fraction]:
    """Utilitarian instance reaching B = 4/3 sum|A_i| - n exactly when the MCSP instance is a yes-instance."""
    if not inst.families:
        raise InvalidInstanceError("MCSP instance needs at least one family")
    for i, family in enumerate(inst.families):
        if len(family) < 2:
            raise InvalidInstanceError(f"family {i + 1} has {len(family)} segments; at least 2 required")
    total_segments = sum(len(f) for f in inst.families)
    length = Fraction(inst.m + 2 * total_segments - 2 * len(inst.families))
    third = Fraction(1, 3)
    players: List[PiecewiseConstantValuation] = []
    names: List[str] = []
    for i, (family, C) in enumerate(zip(inst.families, inst.offsets)):
        size = len(family)
        for j, (b, e) in enumerate(family, start=1):
            intervals = [(Fraction(b - 1), Fraction(e), third)]
            intervals += [(Fraction(a), Fraction(c), third) for a, c in _segment_compensation(C, size, j)]
            players.append(_player(intervals, length))
            names.append(f"p{i + 1}.{j}")
        for j in range(1, size):
            players.append(_player([(Fraction(C + 2 * j - 2), Fraction(C + 2 * j - 1), ONE)], length))
            names.append(f"q{i + 1}.{j}")
    instance = CakeInstance(players=tuple(players), names=tuple(names))
    grid = [Fraction(p) for p in range(int(length) + 1)]
    bound = Fraction(4, 3) * total_segments - len(inst.families)
    logger.info(f"MCSP reduction: {instance.n} players on {len(grid) - 1} items, B={bound}")
    return instance, _discretize(instance, grid, length), bound
