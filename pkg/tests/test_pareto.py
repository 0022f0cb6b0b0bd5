import numpy as np
import pytest

from pareto_pomdp.model import CompatibleSet, ModelError
from pareto_pomdp.oracle import brute_force_frontier, covered_by_hull, value_matrix
from pareto_pomdp.pareto import dominates, sweep_frontier, weight_grid
from pareto_pomdp.probability import policy_value
from pareto_pomdp.random_models import random_compatible_set
from pareto_pomdp.solver import solve_pareto

from conftest import outlook_copy

TOL = 1e-9


@pytest.mark.parametrize("a, b, expected", [
    ((30, 0), (27, 27), False),
    ((27, 27), (30, 0), False),
    ((27, 27), (20, 20), True),
    ((20, 20), (20, 20), False),
    ((20, 20 + 1e-12), (20, 20), False),
])
def test_dominates(a, b, expected):
    assert dominates(a, b) is expected


def test_dominates_length_mismatch():
    with pytest.raises(ModelError):
        dominates((1, 2), (1, 2, 3))


def test_weight_grid_two_players():
    grid = weight_grid(2, 5)
    assert [w.weights for w in grid] == [(0, 1), (0.25, 0.75), (0.5, 0.5), (0.75, 0.25), (1, 0)]


def test_weight_grid_simplex():
    grid = weight_grid(3, 3)
    assert len(grid) == 6
    assert all(abs(sum(w) - 1) < 1e-12 for w in grid)


@pytest.mark.parametrize("g", [1, 0, 2.5])
def test_weight_grid_rejects_small(g):
    with pytest.raises(ModelError):
        weight_grid(2, g)


def values_of(points):
    return [pt.values for pt in points]


def test_cake_frontier_grid_5(cake):
    vals = values_of(sweep_frontier(cake, 5))
    for target in [(30, 0), (27, 27), (0, 30)]:
        assert any(v == pytest.approx(target, abs=TOL) for v in vals)


def test_frontier_points_are_consistent(cake):
    for pt in sweep_frontier(cake, 11):
        assert pt.values == pytest.approx(tuple(policy_value(p, pt.policy) for p in cake.players))


def test_identical_outlooks_single_point(identical_cake):
    assert len(sweep_frontier(identical_cake, 11)) == 1


def test_cake_frontier_not_dominated_by_any_deterministic_policy(cake):
    vals = value_matrix(cake)
    for pt in sweep_frontier(cake, 11):
        assert not any(dominates(tuple(v), pt.values) for v in vals)


@pytest.mark.parametrize("seed", range(15))
def test_mutual_non_dominance(seed):
    rng = np.random.default_rng(1300 + seed)
    cset = random_compatible_set(rng)
    pts = sweep_frontier(cset, 11)
    for a in pts:
        for b in pts:
            assert not dominates(a.values, b.values)


@pytest.mark.parametrize("seed", range(15))
def test_monotone_weight_response(seed):
    rng = np.random.default_rng(1400 + seed)
    cset = random_compatible_set(rng)
    v1 = [policy_value(cset.players[0], solve_pareto(cset, w)) for w in weight_grid(2, 21)]
    assert all(b >= a - 1e-9 for a, b in zip(v1, v1[1:]))


def test_cake_oracle_vectors_covered_by_swept_hull(cake):
    swept = values_of(sweep_frontier(cake, 11))
    for vec, _ in brute_force_frontier(cake):
        assert covered_by_hull(vec, swept)


@pytest.mark.parametrize("seed", range(10))
def test_swept_points_support_the_oracle_frontier(seed):
    """For every grid weight, the best swept point is as good as the best oracle point."""
    rng = np.random.default_rng(1500 + seed)
    cset = random_compatible_set(rng, max_actions=2)
    swept = np.array(values_of(sweep_frontier(cset, 11)))
    oracle = np.array([v for v, _ in brute_force_frontier(cset)])
    for w in weight_grid(2, 11):
        w = np.array(w.weights)
        assert (swept @ w).max() == pytest.approx((oracle @ w).max(), abs=1e-9)
    for v in swept:
        assert covered_by_hull(v, oracle)


def test_three_player_sweep(cake):
    alice, bob = cake.players
    trio = CompatibleSet(cake.actions, cake.observations, 1,
                         (alice, bob, outlook_copy(alice, "Carol")))
    pts = sweep_frontier(trio, 5)
    assert pts
    for a in pts:
        assert len(a.values) == 3
        for b in pts:
            assert not dominates(a.values, b.values)


def test_parallel_sweep_matches_sequential(cake):
    seq = values_of(sweep_frontier(cake, 11))
    par = values_of(sweep_frontier(cake, 11, workers=4))
    assert seq == par
