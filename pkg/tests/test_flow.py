import random
from fractions import Fraction

import pytest

from polytran import (BoundsSpec, Infeasible, InvalidSpec, brute_min_cost,
                      build_network, check_membership, decompose,
                      enumerate_vertices, is_feasible, is_integral,
                      min_cost_flow, random_hull_point, solve_min_cost)

from _grid import M, k_values, random_rational_matrix, spec_grid

F = Fraction
DS2 = BoundsSpec.doubly_stochastic(2)
COUNTER = BoundsSpec.from_bounds([3, 1], [3, 1], [2, 2], [2, 2])


def objective(T, G):
    return sum((T[c] * G[c] for c in G.cells()), F(0))


def test_feasibility_examples():
    assert is_feasible(DS2)
    # equal totals (3+1 = 2+2) yet row 0 needs sum 3 from two entries <= 1
    assert sum(COUNTER.row_max) == sum(COUNTER.col_max)
    assert not enumerate_vertices(COUNTER)
    assert not is_feasible(COUNTER)
    with pytest.raises(InvalidSpec):
        BoundsSpec.substochastic(2, 2, k=3)


def test_equal_bounds_follow_total_criterion_when_lines_fit():
    rng = random.Random(3)
    for _ in range(60):
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        R = [rng.randint(0, m) for _ in range(n)]
        C = [rng.randint(0, n) for _ in range(m)]
        spec = BoundsSpec.from_bounds(R, R, C, C)
        if sum(R) != sum(C):
            assert not is_feasible(spec)
        else:
            # Gale-Ryser may still fail; the oracle decides
            assert is_feasible(spec) == bool(enumerate_vertices(spec))


def test_solve_examples():
    G, value = solve_min_cost(M([1, 2], [2, 1]), DS2)
    assert (G, value) == (M([1, 0], [0, 1]), 2)
    G, value = solve_min_cost(M([1, 2], [3, 4]), BoundsSpec.substochastic(2, 2, k=1))
    assert (G, value) == (M([1, 0], [0, 0]), 1)
    spec = BoundsSpec.from_bounds([1, 0], [2, 1], [0, 1, 0], [1, 1, 2])
    G, value = solve_min_cost(M([0, 0, 0], [0, 0, 0]), spec)
    assert value == 0 and is_integral(G) and check_membership(G, spec).is_member


def test_solve_infeasible():
    with pytest.raises(Infeasible):
        solve_min_cost(M([0, 0], [0, 0]), COUNTER)


def test_min_cost_flow_examples():
    net = min_cost_flow(build_network(DS2))
    assert sum(a.flow for a in net.arcs if a.tail == 0) == 2
    assert all(x == 0 for x in net.imbalance())
    with pytest.raises(Infeasible):
        min_cost_flow(build_network(COUNTER))
    net = min_cost_flow(build_network(BoundsSpec.substochastic(2, 2, k=1)))
    assert net.return_arc.flow == 1


def test_negative_costs():
    spec = BoundsSpec.substochastic(2, 3)
    T = M([-1, 2, "-1/2"], ["-3", "-2", 5])
    G, value = solve_min_cost(T, spec)
    assert value == brute_min_cost(T, enumerate_vertices(spec))[1] == F(-7, 2)


FEASIBLE, INFEASIBLE = spec_grid()


@pytest.mark.parametrize("spec", FEASIBLE[::3] + INFEASIBLE[::5])
def test_flow_matches_enumeration(spec):
    assert is_feasible(spec) == bool(enumerate_vertices(spec))
    for k in range(1, min(sum(spec.row_max), sum(spec.col_max)) + 1):
        sk = spec.with_k(k)
        assert is_feasible(sk) == bool(enumerate_vertices(sk))


@pytest.mark.parametrize("spec", FEASIBLE[1::4])
def test_solver_optimal_and_integral(spec):
    rng = random.Random(spec.n * 7 + spec.m)
    for k in [None] + k_values(spec)[:2]:
        sk = spec.with_k(k)
        vs = enumerate_vertices(sk)
        T = random_rational_matrix(rng, spec.n, spec.m)
        G, value = solve_min_cost(T, sk)
        assert is_integral(G) and check_membership(G, sk).is_member
        assert objective(T, G) == value == brute_min_cost(T, vs)[1]
        # no vertex of a decomposed interior point beats the optimum, and at
        # least one is no worse than the point itself
        A = random_hull_point(vs, rng.randint(0, 10**6))
        vertex_values = [objective(T, v) for v in decompose(A, sk).vertices]
        assert min(vertex_values) <= objective(T, A)
        assert min(vertex_values) >= value
