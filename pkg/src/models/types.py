from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Literal, Optional, Tuple

from .errors import InvalidInstanceError

# Exact rational scalar used for every value, density and cut position
Rational = Fraction
# Inclusive 1-based item range (s, t)
ItemRange = Tuple[int, int]

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Segment:
    start: Fraction
    end: Fraction
    density: Fraction

    @property
    def length(self) -> Fraction:
        return self.end - self.start

    @property
    def value(self) -> Fraction:
        return self.density * (self.end - self.start)


@dataclass(frozen=True)
class PiecewiseConstantValuation:
    """Step density on [0, 1]; zero-density gaps are stored as segments."""

    segments: Tuple[Segment, ...]

    def __post_init__(self):
        if not self.segments:
            raise InvalidInstanceError("valuation has no segments")
        if self.segments[0].start != ZERO or self.segments[-1].end != ONE:
            raise InvalidInstanceError("segments must cover [0,1] exactly")
        for prev, cur in zip(self.segments, self.segments[1:]):
            if prev.end != cur.start:
                raise InvalidInstanceError(f"segments not contiguous at {prev.end}")
        for seg in self.segments:
            if seg.start >= seg.end:
                raise InvalidInstanceError(f"empty segment [{seg.start},{seg.end}]")
            if seg.density < 0:
                raise InvalidInstanceError(f"negative density {seg.density}")

    @cached_property
    def starts(self) -> Tuple[Fraction, ...]:
        return tuple(s.start for s in self.segments)

    @cached_property
    def total(self) -> Fraction:
        return sum((s.value for s in self.segments), ZERO)

    @property
    def breakpoints(self) -> Tuple[Fraction, ...]:
        return self.starts + (ONE,)

    def density_at(self, x: Fraction) -> Fraction:
        """Density of the segment containing x (the right-hand one at a breakpoint)."""
        idx = bisect_right(self.starts, x) - 1
        return self.segments[min(max(idx, 0), len(self.segments) - 1)].density


@dataclass(frozen=True)
class CakeInstance:
    players: Tuple[PiecewiseConstantValuation, ...]
    names: Optional[Tuple[Optional[str], ...]] = None
    raw: bool = False

    def __post_init__(self):
        if not self.players:
            raise InvalidInstanceError("instance needs at least one player")
        if self.names is not None and len(self.names) != len(self.players):
            raise InvalidInstanceError("names and players differ in length")

    @property
    def n(self) -> int:
        return len(self.players)


@dataclass(frozen=True)
class ConnectedDivision:
    """Cuts x_1 <= ... <= x_{n-1}; order[j] is the player owning the j-th interval."""

    cuts: Tuple[Fraction, ...]
    order: Tuple[int, ...]

    def boundaries(self) -> Tuple[Fraction, ...]:
        return (ZERO,) + tuple(self.cuts) + (ONE,)

    def piece_of(self, player: int) -> Tuple[Fraction, Fraction]:
        j = self.order.index(player)
        bounds = self.boundaries()
        return bounds[j], bounds[j + 1]


@dataclass(frozen=True)
class DiscreteInstance:
    values: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.values:
            raise InvalidInstanceError("discrete instance needs at least one player")
        m = len(self.values[0])
        if m < 1:
            raise InvalidInstanceError("discrete instance needs at least one item")
        for row in self.values:
            if len(row) != m:
                raise InvalidInstanceError("value rows differ in length")
            if any(v < 0 for v in row):
                raise InvalidInstanceError("item values must be nonnegative")

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def m(self) -> int:
        return len(self.values[0])

    def range_value(self, player: int, piece: Optional[ItemRange]) -> Fraction:
        if piece is None:
            return ZERO
        s, t = piece
        return sum(self.values[player][s - 1:t], ZERO)


@dataclass(frozen=True)
class DiscreteDivision:
    """pieces[i] is player i's inclusive item range, or None when Empty."""

    pieces: Tuple[Optional[ItemRange], ...]

    @property
    def n(self) -> int:
        return len(self.pieces)


@dataclass(frozen=True)
class WelfareReport:
    utilities: Tuple[Fraction, ...]
    utilitarian: Fraction
    egalitarian: Fraction

    @classmethod
    def from_utilities(cls, utilities) -> "WelfareReport":
        utilities = tuple(utilities)
        return cls(
            utilities=utilities,
            utilitarian=sum(utilities, ZERO),
            egalitarian=min(utilities) if utilities else ZERO,
        )


@dataclass(frozen=True)
class CutSet:
    points: Tuple[Fraction, ...]
    epsilon: Fraction

    def __post_init__(self):
        if len(self.points) < 2 or self.points[0] != ZERO or self.points[-1] != ONE:
            raise InvalidInstanceError("cut set must start at 0 and end at 1")
        for a, b in zip(self.points, self.points[1:]):
            if a >= b:
                raise InvalidInstanceError("cut set must be strictly increasing")

    @property
    def m(self) -> int:
        return len(self.points) - 1


@dataclass(frozen=True)
class TraceStep:
    t: int
    player: int
    start: int
    own_cost: Fraction
    others_cost: Fraction
    owned_sum: Fraction
    ever_owned_sum: Fraction


@dataclass
class ApproxTrace:
    steps: List[TraceStep] = field(default_factory=list)

    def sandwich_holds(self) -> bool:
        return all(
            s.owned_sum <= s.ever_owned_sum <= 2 * s.owned_sum for s in self.steps
        )


@dataclass
class UtilTable:
    """Rows u^{(S,k)} keyed by (mask, k); entries are integers scaled by `scale`, None is -inf."""

    n: int
    m: int
    scale: int
    rows: Dict[Tuple[int, int], List[Optional[int]]]

    def entry(self, mask: int, k: int, j: int) -> Optional[Fraction]:
        row = self.rows.get((mask, k))
        if row is None or row[j - 1] is None:
            return None
        return Fraction(row[j - 1], self.scale)


@dataclass
class EgalCutVector:
    """C(S) for one probe B; None stands for +infinity."""

    bound: Fraction
    entries: Dict[int, Optional[Fraction]]
    last_player: Dict[int, int]

    def full(self, n: int) -> Optional[Fraction]:
        return self.entries[(1 << n) - 1]


@dataclass(frozen=True)
class SegmentGrid:
    boundaries: Tuple[Fraction, ...]
    # densities[i][I] is player i's constant density on interval I
    densities: Tuple[Tuple[Fraction, ...], ...]

    @classmethod
    def from_instance(cls, instance: "CakeInstance") -> "SegmentGrid":
        """Union of every player's breakpoints; each density is constant between them."""
        points = sorted({p for v in instance.players for p in v.breakpoints} | {ZERO, ONE})
        mids = [(a + b) / 2 for a, b in zip(points, points[1:])]
        return cls(
            boundaries=tuple(points),
            densities=tuple(tuple(v.density_at(x) for x in mids) for v in instance.players),
        )

    @property
    def intervals(self) -> List[Tuple[Fraction, Fraction]]:
        return list(zip(self.boundaries, self.boundaries[1:]))

    def value(self, player: int, interval: int) -> Fraction:
        a, b = self.boundaries[interval], self.boundaries[interval + 1]
        return self.densities[player][interval] * (b - a)


@dataclass(frozen=True)
class FractionalAssignment:
    grid: SegmentGrid
    fractions: Tuple[Tuple[Fraction, ...], ...]

    def utility(self, player: int) -> Fraction:
        return sum(
            (self.grid.value(player, I) * x for I, x in enumerate(self.fractions[player])),
            ZERO,
        )


@dataclass(frozen=True)
class StandardLP:
    """maximize c.x subject to A x <= b, x >= 0."""

    objective: Tuple[Fraction, ...]
    matrix: Tuple[Tuple[Fraction, ...], ...]
    rhs: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.matrix) != len(self.rhs):
            raise InvalidInstanceError("matrix rows and right-hand sides differ")
        for row in self.matrix:
            if len(row) != len(self.objective):
                raise InvalidInstanceError("matrix row length differs from objective")


@dataclass(frozen=True)
class LPSolution:
    status: Literal["optimal", "unbounded", "infeasible"]
    value: Optional[Fraction] = None
    x: Optional[Tuple[Fraction, ...]] = None


@dataclass(frozen=True)
class ThreeDMInstance:
    q: int
    triples: Tuple[Tuple[int, int, int], ...]

    def multiplicity(self, axis: int, element: int) -> int:
        return sum(1 for e in self.triples if e[axis] == element)


@dataclass(frozen=True)
class McspInstance:
    m: int
    families: Tuple[Tuple[ItemRange, ...], ...]

    def __post_init__(self):
        for family in self.families:
            for b, e in family:
                if not 1 <= b <= e <= self.m:
                    raise InvalidInstanceError(f"segment [{b},{e}] outside [1,{self.m}]")

    @property
    def offsets(self) -> List[int]:
        out, c = [], self.m
        for family in self.families:
            out.append(c)
            c += 2 * (len(family) - 1)
        return out


Objective = Literal["util", "egal"]
