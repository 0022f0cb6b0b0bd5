import itertools

import numpy as np
import pytest

from pareto_pomdp.files import bundled_model
from pareto_pomdp.model import ActionSet, CompatibleSet, ObservationSet, PlayerOutlook, UtilitySpec
from pareto_pomdp.policy import History, Policy
from pareto_pomdp.probability import Trajectory

CAKE_ACTIONS = ("all-none", "half-half", "none-all")


@pytest.fixture
def cake():
    return bundled_model("cake")


@pytest.fixture
def pi_hat(cake):
    """The bet policy: give Alice the cake on red, Bob on green."""
    choice = {"red": "all-none", "green": "none-all"}
    return Policy.deterministic(cake.actions, cake.observations, 1,
                                lambda h: choice[h.observations[0]])


@pytest.fixture
def half_half(cake):
    return Policy.constant(cake.actions, cake.observations, 1, "half-half")


def outlook_copy(outlook, name, utility=None):
    return PlayerOutlook(name, outlook.states, outlook.initial, outlook.transition,
                         outlook.observation, utility or outlook.utility,
                         outlook.actions, outlook.observations, outlook.horizon)


@pytest.fixture
def identical_cake(cake):
    """Both players hold Alice's beliefs and Alice's utility."""
    alice = cake.players[0]
    return CompatibleSet(cake.actions, cake.observations, 1,
                         (outlook_copy(alice, "A1"), outlook_copy(alice, "A2")))


@pytest.fixture
def shared_belief_cake(cake):
    """Alice's beliefs for both players, utilities as in the cake table."""
    alice, bob = cake.players
    return CompatibleSet(cake.actions, cake.observations, 1,
                         (outlook_copy(alice, "Alice"), outlook_copy(alice, "Bob", bob.utility)))


def two_state_outlook(name="P", obs_red=(0.5, 0.5)):
    """Equiprobable sA/sB, with configurable P(red | sA), P(red | sB)."""
    states = ("sA", "sB")
    actions = ("x", "y")
    return PlayerOutlook(
        name, states, {"sA": 0.5, "sB": 0.5},
        {(s, a): {"sA": 0.5, "sB": 0.5} for s in states for a in actions},
        {"sA": {"red": obs_red[0], "green": 1 - obs_red[0]},
         "sB": {"red": obs_red[1], "green": 1 - obs_red[1]}},
        UtilitySpec.additive({"sA": 1.0, "sB": 0.0}), actions, ("red", "green"))


def iter_trajectories(outlook, actions, observations, horizon):
    for states in itertools.product(outlook.states, repeat=horizon + 1):
        for obs in itertools.product(observations, repeat=horizon):
            for acts in itertools.product(actions, repeat=horizon):
                yield Trajectory(states, obs, acts)


def brute_prefix_weights(outlook, history):
    """Joint weight of every state prefix, by summing the full product directly."""
    i = history.step
    out = {}
    for prefix in itertools.product(outlook.states, repeat=i):
        w = outlook.initial.get(prefix[0], 0.0)
        for t in range(i):
            w *= outlook.observation[prefix[t]].get(history.observations[t], 0.0)
            if t + 1 < i:
                w *= outlook.transition[(prefix[t], history.actions[t])].get(prefix[t + 1], 0.0)
        out[prefix] = w
    return out


def random_policy(rng, actions, observations, horizon, deterministic=False):
    table = {}
    for h in Policy.deterministic(actions, observations, horizon, lambda h: actions[0]).table:
        if deterministic:
            k = rng.integers(len(actions))
            table[h] = {a: float(i == k) for i, a in enumerate(actions)}
        else:
            p = rng.dirichlet(np.ones(len(actions)))
            table[h] = {a: float(x) for a, x in zip(actions, p)}
    return Policy(tuple(actions), tuple(observations), horizon, table)


# filled by test_acceptance, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
