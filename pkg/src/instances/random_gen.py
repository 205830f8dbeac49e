import random
from fractions import Fraction
from typing import List

from ..core.valuation import make_valuation, normalize
from ..models.errors import InvalidInputError
from ..models.types import ConnectedDivision, CakeInstance, DiscreteInstance, PiecewiseConstantValuation


def _random_valuation(rng: random.Random, segments: int, piecewise_uniform: bool) -> PiecewiseConstantValuation:
    denominator = max(8, 4 * segments)
    inner = sorted(rng.sample(range(1, denominator), segments - 1))
    points = [Fraction(0)] + [Fraction(p, denominator) for p in inner] + [Fraction(1)]
    if piecewise_uniform:
        densities: List[int] = [rng.randint(0, 1) for _ in range(segments)]
    else:
        densities = [rng.randint(0, 9) for _ in range(segments)]
    if not any(densities):
        densities[rng.randrange(segments)] = 1
    return normalize(
        make_valuation((a, b, Fraction(d)) for a, b, d in zip(points, points[1:], densities))
    )


def gen_random(n: int, segments_per_player: int, piecewise_uniform: bool = False, seed: int = 0) -> CakeInstance:
    """Seeded normalized instance; breakpoints are multiples of 1/max(8, 4*segments)."""
    if n < 1 or segments_per_player < 1:
        raise InvalidInputError("n and segments_per_player must be at least 1")
    rng = random.Random(seed)
    return CakeInstance(
        players=tuple(_random_valuation(rng, segments_per_player, piecewise_uniform) for _ in range(n))
    )


def gen_random_discrete(n: int, m: int, max_value: int = 9, seed: int = 0) -> DiscreteInstance:
    if n < 1 or m < 1 or max_value < 0:
        raise InvalidInputError("need n >= 1, m >= 1 and max_value >= 0")
    rng = random.Random(seed)
    return DiscreteInstance(
        values=tuple(
            tuple(Fraction(rng.randint(0, max_value)) for _ in range(m)) for _ in range(n)
        )
    )


def gen_random_division(n: int, seed: int = 0, denominator: int = 64) -> ConnectedDivision:
    if n < 1 or denominator < 1:
        raise InvalidInputError("need n >= 1 and denominator >= 1")
    rng = random.Random(seed)
    cuts = sorted(Fraction(rng.randint(0, denominator), denominator) for _ in range(n - 1))
    order = list(range(n))
    rng.shuffle(order)
    return ConnectedDivision(cuts=tuple(cuts), order=tuple(order))
