from fractions import Fraction as F

from src.engine.nonconnected import build_egal_lp, variable_index
from src.engine.simplex import check_solution, solve_lp
from src.instances.random_gen import gen_random
from src.models.types import SegmentGrid, StandardLP


def lp(objective, matrix, rhs):
    return StandardLP(
        objective=tuple(F(c) for c in objective),
        matrix=tuple(tuple(F(a) for a in row) for row in matrix),
        rhs=tuple(F(b) for b in rhs),
    )


def test_single_bound():
    solution = solve_lp(lp([1], [[1]], [1]))
    assert solution.status == "optimal"
    assert solution.value == 1
    assert solution.x == (F(1),)


def test_degenerate_ties():
    problem = lp([1, 1], [[1, 1]], [1])
    solution = solve_lp(problem)
    assert solution.value == 1
    assert check_solution(problem, solution.x) is None


def test_chained_bound():
    problem = lp([1, 0], [[1, -1], [0, 1]], [0, 1])
    solution = solve_lp(problem)
    assert solution.value == 1
    assert solution.x == (F(1), F(1))


def test_unbounded():
    assert solve_lp(lp([1], [[-1]], [1])).status == "unbounded"


def test_infeasible():
    solution = solve_lp(lp([1], [[1]], [-1]))
    assert solution.status == "infeasible"
    assert solution.value is None


def test_negative_rhs_needs_phase_one():
    # max x s.t. x <= 2, x >= 1
    problem = lp([1], [[1], [-1]], [2, -1])
    solution = solve_lp(problem)
    assert solution.value == 2
    assert check_solution(problem, solution.x) is None


def test_check_solution_reports_violation():
    assert check_solution(lp([1], [[1]], [1]), (F(2),)) == "row 0: 2 > 1"


def test_matches_grid_search_for_two_players():
    steps = 64
    for seed in range(10):
        instance = gen_random(2, 2, seed=seed)
        grid = SegmentGrid.from_instance(instance)
        J = len(grid.boundaries) - 1
        assert J <= 3
        solution = solve_lp(build_egal_lp(grid))
        t_lp = solution.value
        scale = 1
        for i in range(2):
            for I in range(J):
                scale = scale * grid.value(i, I).denominator
        a = [int(grid.value(0, I) * scale) for I in range(J)]
        b = [int(grid.value(1, I) * scale) for I in range(J)]
        best = 0

        def search(I, u0, u1):
            nonlocal best
            if I == J:
                best = max(best, min(u0, u1))
                return
            for k in range(steps + 1):
                search(I + 1, u0 + a[I] * k, u1 + b[I] * (steps - k))

        search(0, 0, 0)
        t_grid = F(best, scale * steps)
        assert t_lp - F(1, steps) <= t_grid <= t_lp
        for i in range(2):
            got = sum(grid.value(i, I) * solution.x[variable_index(grid, i, I)] for I in range(J))
            assert got >= t_lp
