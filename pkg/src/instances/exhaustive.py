from fractions import Fraction
from itertools import combinations, product

from ..models.errors import InvalidInputError, ResourceGuardExceeded
from ..models.types import DiscreteInstance, McspInstance, ThreeDMInstance
from ..utils.logging import get_logger

logger = get_logger(__name__)

DEFAULT_EXHAUSTIVE_LIMIT = 12


def solve_3dm(inst: ThreeDMInstance, limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> bool:
    """True when some q triples cover every element of X, Y and Z exactly once."""
    if len(inst.triples) > limit:
        logger.warning(f"{len(inst.triples)} triples exceed the exhaustive limit {limit}")
        raise ResourceGuardExceeded(f"{len(inst.triples)} triples exceed the limit {limit}")
    for chosen in combinations(inst.triples, inst.q):
        if all(len({t[axis] for t in chosen}) == inst.q for axis in range(3)):
            logger.debug(f"3DM cover {chosen}")
            return True
    return False


def solve_mcsp(inst: McspInstance, limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> bool:
    """True when one segment per family can be chosen with all choices pairwise disjoint."""
    total = sum(len(f) for f in inst.families)
    if total > limit:
        logger.warning(f"{total} segments exceed the exhaustive limit {limit}")
        raise ResourceGuardExceeded(f"{total} segments exceed the limit {limit}")
    for choice in product(*inst.families):
        ordered = sorted(choice)
        if all(prev[1] < cur[0] for prev, cur in zip(ordered, ordered[1:])):
            logger.debug(f"MCSP packing {choice}")
            return True
    return False


def mcsp_from_egal(D: DiscreteInstance, B: Fraction) -> McspInstance:
    """Family i holds every item range worth at least B to player i."""
    B = Fraction(B)
    if B <= 0:
        raise InvalidInputError(f"threshold must be positive, got {B}")
    families = tuple(
        tuple(
            (s, t)
            for s in range(1, D.m + 1)
            for t in range(s, D.m + 1)
            if D.range_value(i, (s, t)) >= B
        )
        for i in range(D.n)
    )
    return McspInstance(m=D.m, families=families)
