"""Random small compatible sets for property tests and oracle cross-checks."""

from __future__ import annotations

import numpy as np

from .model import ActionSet, CompatibleSet, ObservationSet, PlayerOutlook, UtilitySpec, all_sequences


def _distribution(rng: np.random.Generator, labels, sparsity: float) -> dict:
    """Random distribution; with probability ``sparsity`` each entry is forced to zero."""
    p = rng.dirichlet(np.ones(len(labels)))
    if len(labels) > 1 and sparsity > 0.0:
        mask = rng.random(len(labels)) < sparsity
        mask[rng.integers(len(labels))] = False
        p = np.where(mask, 0.0, p)
        p = p / p.sum()
    return {lab: float(x) for lab, x in zip(labels, p) if x > 0.0}


def random_beliefs(rng, states, actions, observations, sparsity=0.2):
    initial = _distribution(rng, states, sparsity)
    transition = {(s, a): _distribution(rng, states, sparsity) for s in states for a in actions}
    observation = {s: _distribution(rng, observations, sparsity) for s in states}
    return initial, transition, observation


def random_utility(rng, states, horizon, kind=None) -> UtilitySpec:
    kind = kind or ("tabular" if rng.random() < 0.5 else "additive")
    if kind == "additive":
        return UtilitySpec.additive({s: float(rng.uniform(-5, 10)) for s in states})
    return UtilitySpec.tabular({seq: float(rng.uniform(-5, 10))
                                for seq in all_sequences(states, horizon)})


def random_outlook(rng, name, actions, observations, horizon, n_states, sparsity=0.2,
                   utility_kind=None) -> PlayerOutlook:
    states = tuple(f"{name.lower()}{i}" for i in range(n_states))
    initial, transition, observation = random_beliefs(rng, states, actions, observations, sparsity)
    return PlayerOutlook(name, states, initial, transition, observation,
                         random_utility(rng, states, horizon, utility_kind),
                         tuple(actions), tuple(observations), horizon)


def random_compatible_set(rng: np.random.Generator, *, max_states=3, max_actions=3,
                          max_observations=2, max_horizon=2, k=2, sparsity=0.2,
                          shared_beliefs=False, sizes=None) -> CompatibleSet:
    """A random set of ``k`` compatible outlooks.

    ``sizes`` fixes (n_actions, n_observations, horizon); otherwise each is
    drawn uniformly up to its maximum. With ``shared_beliefs`` every player
    gets the same states, initial distribution, transitions and observation
    kernel, and only utilities differ.
    """
    if sizes is None:
        sizes = (int(rng.integers(1, max_actions + 1)), int(rng.integers(1, max_observations + 1)),
                 int(rng.integers(1, max_horizon + 1)))
    n_a, n_o, horizon = sizes
    actions = tuple(f"a{i}" for i in range(n_a))
    observations = tuple(f"o{i}" for i in range(n_o))
    names = [f"P{j + 1}" for j in range(k)]
    if shared_beliefs:
        n_states = int(rng.integers(1, max_states + 1))
        states = tuple(f"s{i}" for i in range(n_states))
        beliefs = random_beliefs(rng, states, actions, observations, sparsity)
        players = [PlayerOutlook(nm, states, *beliefs, random_utility(rng, states, horizon),
                                 actions, observations, horizon)
                   for nm in names]
    else:
        players = [random_outlook(rng, nm, actions, observations, horizon,
                                  int(rng.integers(1, max_states + 1)), sparsity)
                   for nm in names]
    return CompatibleSet(ActionSet(actions), ObservationSet(observations), horizon, tuple(players))


def random_weights(rng: np.random.Generator, k: int = 2) -> tuple:
    w = rng.dirichlet(np.ones(k))
    return tuple(float(x) for x in w / w.sum())
