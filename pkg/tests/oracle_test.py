from fractions import Fraction as F

import pytest

from src.engine.oracle import DivisionEnumerator, brute_force, count_divisions, enumerate_divisions
from src.models.errors import InvalidInputError, ResourceGuardExceeded
from src.models.types import DiscreteDivision, DiscreteInstance


def test_count_examples():
    assert count_divisions(1, 1) == 1
    assert count_divisions(2, 2) == 4
    assert count_divisions(2, 1) == 2
    assert count_divisions(3, 3) == 21


def test_two_by_two_enumeration():
    assert set(enumerate_divisions(2, 2)) == {
        DiscreteDivision(pieces=((1, 2), None)),
        DiscreteDivision(pieces=(None, (1, 2))),
        DiscreteDivision(pieces=((1, 1), (2, 2))),
        DiscreteDivision(pieces=((2, 2), (1, 1))),
    }


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("m", [1, 2, 3, 5])
def test_enumeration_is_exhaustive_and_duplicate_free(n, m):
    divisions = list(enumerate_divisions(n, m))
    assert len(divisions) == len(set(divisions)) == count_divisions(n, m)
    for d in divisions:
        covered = sorted(i for p in d.pieces if p is not None for i in range(p[0], p[1] + 1))
        assert covered == list(range(1, m + 1))


def test_guard():
    with pytest.raises(ResourceGuardExceeded):
        enumerate_divisions(3, 3, limit=5)
    assert len(DivisionEnumerator(3, 3, limit=21)) == 21


def test_brute_force_examples():
    D = DiscreteInstance(values=((F(3), F(0)), (F(0), F(3))))
    report, division = brute_force(D, "util")
    assert report.utilitarian == 6
    assert division.pieces == ((1, 1), (2, 2))
    report, _ = brute_force(D, "egal")
    assert report.egalitarian == 3


def test_brute_force_all_zero():
    D = DiscreteInstance(values=((F(0),) * 3,) * 2)
    assert brute_force(D, "util")[0].utilitarian == 0
    assert brute_force(D, "egal")[0].egalitarian == 0


def test_brute_force_rejects_objective():
    with pytest.raises(InvalidInputError):
        brute_force(DiscreteInstance(values=((F(1),),)), "nash")
