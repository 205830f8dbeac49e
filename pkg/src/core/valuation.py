from bisect import bisect_right
from fractions import Fraction
from typing import Iterable, List, Tuple

from ..models.errors import InvalidInstanceError, NotEnoughValue, OutOfRangeError
from ..models.types import ONE, ZERO, CakeInstance, PiecewiseConstantValuation, Segment
from ..utils.logging import get_logger

logger = get_logger(__name__)


def make_valuation(pieces: Iterable[Tuple[Fraction, Fraction, Fraction]]) -> PiecewiseConstantValuation:
    """Build a valuation from (start, end, density) pieces, filling gaps with zero density."""
    ordered = sorted(
        (Fraction(a), Fraction(b), Fraction(d)) for a, b, d in pieces
    )
    segments: List[Segment] = []
    pos = ZERO
    for a, b, d in ordered:
        if a < ZERO or b > ONE:
            raise InvalidInstanceError(f"segment [{a},{b}] leaves [0,1]")
        if a >= b:
            raise InvalidInstanceError(f"segment [{a},{b}] is empty")
        if a < pos:
            raise InvalidInstanceError(f"segments overlap at {a}")
        if a > pos:
            segments.append(Segment(pos, a, ZERO))
        segments.append(Segment(a, b, d))
        pos = b
    if pos < ONE:
        segments.append(Segment(pos, ONE, ZERO))
    return PiecewiseConstantValuation(tuple(segments))


def uniform_valuation() -> PiecewiseConstantValuation:
    return PiecewiseConstantValuation((Segment(ZERO, ONE, ONE),))


def _check_point(x: Fraction, what: str):
    if x < ZERO or x > ONE:
        raise OutOfRangeError(f"{what}={x} outside [0,1]")


def eval_interval(v: PiecewiseConstantValuation, a: Fraction, b: Fraction) -> Fraction:
    """v(a, b): integral of the density over [a, b]."""
    _check_point(a, "a")
    _check_point(b, "b")
    if a > b:
        raise OutOfRangeError(f"a={a} > b={b}")
    if a == b:
        return ZERO
    total = ZERO
    idx = max(bisect_right(v.starts, a) - 1, 0)
    for seg in v.segments[idx:]:
        if seg.start >= b:
            break
        lo = max(seg.start, a)
        hi = min(seg.end, b)
        if hi > lo:
            total += seg.density * (hi - lo)
    return total


def inv_eval(v: PiecewiseConstantValuation, a: Fraction, x: Fraction) -> Fraction:
    """Leftmost b >= a with v(a, b) = x; raises NotEnoughValue when v(a, 1) < x."""
    _check_point(a, "a")
    if x < ZERO:
        raise OutOfRangeError(f"x={x} is negative")
    if x == ZERO:
        return a
    need = x
    idx = max(bisect_right(v.starts, a) - 1, 0)
    for seg in v.segments[idx:]:
        if seg.density == ZERO or seg.end <= a:
            continue
        lo = max(seg.start, a)
        cap = seg.density * (seg.end - lo)
        if cap >= need:
            return lo + need / seg.density
        need -= cap
    raise NotEnoughValue(f"only {x - need} available right of {a}, asked for {x}")


def normalize(v: PiecewiseConstantValuation) -> PiecewiseConstantValuation:
    total = v.total
    if total == ZERO:
        raise InvalidInstanceError("cannot normalize an identically-zero valuation")
    if total == ONE:
        return v
    return PiecewiseConstantValuation(
        tuple(Segment(s.start, s.end, s.density / total) for s in v.segments)
    )


def normalize_instance(instance: CakeInstance) -> CakeInstance:
    if instance.raw:
        return instance
    return CakeInstance(
        players=tuple(normalize(v) for v in instance.players),
        names=instance.names,
        raw=False,
    )


def is_normalized(instance: CakeInstance) -> bool:
    return all(v.total == ONE for v in instance.players)
