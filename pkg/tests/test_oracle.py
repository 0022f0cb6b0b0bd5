import numpy as np
import pytest

from pareto_pomdp.mixture import mixture_value
from pareto_pomdp.model import CompatibleSet
from pareto_pomdp.oracle import (EnumerationCapExceeded, brute_force_frontier, brute_force_max,
                                 count_deterministic_policies, enumerate_deterministic_policies,
                                 policy_from_index, value_matrix)
from pareto_pomdp.probability import policy_value
from pareto_pomdp.random_models import random_compatible_set, random_weights
from pareto_pomdp.solver import solve_pareto, solve_single

from conftest import outlook_copy

TOL = 1e-9


@pytest.mark.parametrize("n_a, n_o, n, expected", [(3, 2, 1, 9), (2, 1, 1, 2), (2, 2, 2, 1024)])
def test_policy_counts(n_a, n_o, n, expected):
    assert count_deterministic_policies(n_a, n_o, n) == expected
    actions = [f"a{i}" for i in range(n_a)]
    observations = [f"o{i}" for i in range(n_o)]
    plans = list(enumerate_deterministic_policies(actions, observations, n))
    assert len(plans) == expected
    signatures = {tuple(p.action_at(h) for h in p.table) for p in plans}
    assert len(signatures) == expected


def test_cap_exceeded_reports_count():
    with pytest.raises(EnumerationCapExceeded) as info:
        next(enumerate_deterministic_policies("abc", "xyz", 3))
    assert info.value.required == 3 ** (3 + 27 + 243)


@pytest.mark.parametrize("seed", range(8))
def test_value_matrix_matches_policy_value(seed):
    rng = np.random.default_rng(1700 + seed)
    cset = random_compatible_set(rng, sizes=(2, 2, 2))
    vals = value_matrix(cset)
    for k in rng.integers(0, len(vals), size=20):
        policy = policy_from_index(cset.actions, cset.observations, cset.horizon, int(k))
        for j, p in enumerate(cset.players):
            assert vals[k, j] == pytest.approx(policy_value(p, policy), abs=TOL)


def test_cake_frontier(cake):
    front = brute_force_frontier(cake)
    vecs = [v for v, _ in front]
    # the two single-hedge plans (e.g. red -> all-none, green -> half-half) are also undominated
    assert vecs == pytest.approx([(0, 30), (18, 29), (27, 27), (29, 18), (30, 0)], abs=TOL)
    assert not any(v == pytest.approx((20, 20)) for v in vecs)
    for v, policy in front:
        assert tuple(policy_value(p, policy) for p in cake.players) == pytest.approx(v)


def test_identical_outlooks_single_maximum(identical_cake):
    front = brute_force_frontier(identical_cake)
    assert len(front) == 1
    (v1, v2), _ = front[0]
    alice = identical_cake.players[0]
    single = solve_single(alice, identical_cake.actions, identical_cake.observations, 1)
    assert v1 == pytest.approx(v2) == pytest.approx(policy_value(alice, single))


@pytest.mark.parametrize("seed", range(20))
def test_solver_agrees_with_oracle(seed):
    rng = np.random.default_rng(1800 + seed)
    cset = random_compatible_set(rng, max_actions=2)
    vals = value_matrix(cset)
    for _ in range(3):
        w = random_weights(rng)
        best = brute_force_max(cset, w, values=vals)
        assert mixture_value(cset, w, solve_pareto(cset, w)) == pytest.approx(best.value, abs=TOL)


def test_frontier_without_two_player_shortcut():
    rng = np.random.default_rng(3)
    pair = random_compatible_set(rng, sizes=(2, 2, 1))
    extra = random_compatible_set(rng, sizes=(2, 2, 1)).players[0]
    trio = CompatibleSet(pair.actions, pair.observations, 1,
                         pair.players + (outlook_copy(extra, "P3"),))
    front = [v for v, _ in brute_force_frontier(trio)]
    vals = value_matrix(trio)
    for v in front:
        assert not any(np.all(u >= np.array(v) - 1e-9) and np.any(u > np.array(v) + 1e-9)
                       for u in vals)
