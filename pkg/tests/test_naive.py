import numpy as np
import pytest

from pareto_pomdp.model import CompatibleSet, ModelError
from pareto_pomdp.naive import compare_naive, solve_naive
from pareto_pomdp.probability import policy_value
from pareto_pomdp.random_models import random_compatible_set
from pareto_pomdp.solver import solve_pareto

from conftest import outlook_copy, two_state_outlook

TOL = 1e-9
PROOF_GRID = [0.2, 1 / 3, 0.5, 2 / 3, 0.8]


def actions_taken(policy):
    return {h.observations[0]: policy.action_at(h) for h in policy.table}


def values(cset, policy):
    return [policy_value(p, policy) for p in cset.players]


@pytest.mark.parametrize("r, action, expected", [
    (0.2, "none-all", (0, 30)),
    (0.5, "half-half", (20, 20)),
    (0.8, "all-none", (30, 0)),
])
def test_naive_cake_cases(cake, r, action, expected):
    policy = solve_naive(cake, r)
    assert actions_taken(policy) == {"red": action, "green": action}
    assert values(cake, policy) == pytest.approx(expected, abs=TOL)


def test_naive_tie_points(cake):
    # ties broken toward the lowest action index; either way the bet is never reproduced
    assert values(cake, solve_naive(cake, 1 / 3))[0] <= 20 + TOL
    assert values(cake, solve_naive(cake, 2 / 3))[1] <= 20 + TOL


@pytest.mark.parametrize("boundary", [1 / 3, 2 / 3])
def test_naive_switches_exactly_at_boundaries(cake, boundary):
    below = actions_taken(solve_naive(cake, boundary - 1e-3))
    above = actions_taken(solve_naive(cake, boundary + 1e-3))
    assert below["red"] != above["red"]
    for r in np.linspace(0.01, 0.99, 40):
        if abs(r - 1 / 3) > 1e-3 and abs(r - 2 / 3) > 1e-3:
            chosen = actions_taken(solve_naive(cake, r))
            assert chosen["red"] == chosen["green"]


def test_naive_requires_two_players(cake):
    alice, bob = cake.players
    trio = CompatibleSet(cake.actions, cake.observations, 1, (alice, bob, outlook_copy(alice, "C")))
    with pytest.raises(ModelError, match="two players"):
        solve_naive(trio, 0.5)
    with pytest.raises(ModelError, match="two players"):
        compare_naive(trio, [0.5], solve_pareto(trio, (0.4, 0.3, 0.3)))


def test_compare_naive_cake(cake, pi_hat):
    report = compare_naive(cake, PROOF_GRID, pi_hat)
    assert [c.strictly_worse for c in report] == [True] * 5
    assert report[1].values[0] <= 20 + TOL


def test_compare_naive_shared_beliefs_matching_weights(shared_belief_cake):
    report = compare_naive(shared_belief_cake, [0.2, 0.4, 0.5, 0.7],
                           lambda r: solve_pareto(shared_belief_cake, (r, 1 - r)))
    assert not any(c.strictly_worse for c in report)


@pytest.mark.parametrize("seed", range(10))
def test_compare_naive_random_shared_beliefs(seed):
    rng = np.random.default_rng(1600 + seed)
    cset = random_compatible_set(rng, shared_beliefs=True)
    report = compare_naive(cset, [0.1, 0.45, 0.9], lambda r: solve_pareto(cset, (r, 1 - r)))
    assert not any(c.strictly_worse for c in report)


def test_naive_zero_probability_history_contributes_nothing():
    a = two_state_outlook("A", obs_red=(1.0, 1.0))
    b = two_state_outlook("B", obs_red=(0.5, 0.5))
    cset = CompatibleSet(("x", "y"), ("red", "green"), 1, (a, b))
    policy = solve_naive(cset, 0.9)
    assert policy.problems() == []
