import random
from fractions import Fraction as F

from src.core.valuation import make_valuation, uniform_valuation
from src.engine.discretize import run_discretization, to_discrete
from src.engine.fpt import fpt_egal, fpt_util_discrete
from src.engine.nonconnected import egal_nonconnected, util_nonconnected
from src.instances.random_gen import gen_random
from src.models.types import CakeInstance, FractionalAssignment


def assert_feasible(assignment: FractionalAssignment):
    for I in range(len(assignment.grid.boundaries) - 1):
        column = [row[I] for row in assignment.fractions]
        assert all(0 <= x <= 1 for x in column)
        assert sum(column) <= 1


def test_util_half_instance(half_instance):
    assignment, report = util_nonconnected(half_instance)
    assert report.utilities == (F(1, 2), F(1))
    assert report.utilitarian == F(3, 2)
    assert_feasible(assignment)


def test_util_identical_players_tie_to_first():
    assignment, report = util_nonconnected(CakeInstance(players=(uniform_valuation(),) * 3))
    assert report.utilitarian == 1
    assert report.utilities == (F(1), F(0), F(0))


def test_util_disjoint_supports():
    thirds = [(F(k, 3), F(k + 1, 3)) for k in range(3)]
    instance = CakeInstance(players=tuple(make_valuation([(a, b, F(3))]) for a, b in thirds))
    _, report = util_nonconnected(instance)
    assert report.utilitarian == 3


def test_egal_examples(half_instance, uniform_pair):
    t, assignment = egal_nonconnected(uniform_pair)
    assert t == F(1, 2)
    t, assignment = egal_nonconnected(half_instance)
    assert t == F(2, 3)
    assert all(assignment.utility(i) >= t for i in range(2))
    assert_feasible(assignment)
    t, _ = egal_nonconnected(CakeInstance(players=(uniform_valuation(),) * 4))
    assert t == F(1, 4)


def test_util_dominates_random_assignments():
    rng = random.Random(5)
    for seed in range(10):
        instance = gen_random(3, 3, seed=seed)
        assignment, report = util_nonconnected(instance)
        grid = assignment.grid
        J = len(grid.boundaries) - 1
        for _ in range(1000):
            columns = []
            for _ in range(J):
                weights = [rng.randint(0, 8) for _ in range(instance.n)]
                total = max(sum(weights), 8)
                columns.append([F(w, total) for w in weights])
            fractions = tuple(tuple(columns[I][i] for I in range(J)) for i in range(instance.n))
            other = FractionalAssignment(grid=grid, fractions=fractions)
            assert sum(other.utility(i) for i in range(instance.n)) <= report.utilitarian


def test_nonconnected_bounds_connected_optima():
    eps = F(1, 8)
    for seed in range(15):
        instance = gen_random(2 + seed % 2, 3, piecewise_uniform=seed % 2 == 1, seed=seed)
        assignment, report = util_nonconnected(instance)
        _, connected = fpt_util_discrete(to_discrete(instance, run_discretization(instance, eps)))
        assert report.utilitarian >= connected.utilitarian
        t, witness = egal_nonconnected(instance)
        assert t >= F(1, instance.n)
        B, _ = fpt_egal(instance, eps)
        assert t >= B
        assert all(witness.utility(i) >= t for i in range(instance.n))
        assert_feasible(witness)
