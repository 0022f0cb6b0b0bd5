"""Weighted-coin mixtures of compatible outlooks.

A hidden selector picks which player's outlook governs the world, with
probability equal to that player's weight, and the world then runs under that
outlook for the whole episode. The selector is never observed, so a policy
for the mixture is a policy for every component.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (CompatibleSet, ModelError, PlayerOutlook, UtilitySpec, WeightVector,
                    all_sequences, as_weights, require_valid)
from .probability import policy_value


@dataclass(frozen=True, eq=False)
class MixtureOutlook(PlayerOutlook):
    """A PlayerOutlook over tagged states ``(j, s)`` with j the 1-based player index."""

    selector_prior: WeightVector | None = None

    def tag_prior(self, j: int) -> float:
        return self.selector_prior[j - 1]


def build_mixture(cset: CompatibleSet, weights) -> MixtureOutlook:
    require_valid(cset)
    weights = as_weights(weights)
    if len(weights) != cset.k:
        raise ModelError(f"got {len(weights)} weights for {cset.k} players")

    states, initial, transition, observation, table = [], {}, {}, {}, {}
    for j, (w, player) in enumerate(zip(weights, cset.players), start=1):
        tagged = [(j, s) for s in player.states]
        states.extend(tagged)
        for s in player.states:
            initial[(j, s)] = w * player.initial.get(s, 0.0)
            # w enters only through the initial mass so each row stays a distribution
            observation[(j, s)] = dict(player.observation[s])
            for a in cset.actions:
                transition[((j, s), a)] = {(j, t): p for t, p in player.transition[(s, a)].items()}
        for seq in all_sequences(player.states, cset.horizon):
            table[tuple((j, s) for s in seq)] = player.utility.value(seq)

    return MixtureOutlook(
        name="+".join(f"{w:g}*{p.name}" for w, p in zip(weights, cset.players)),
        states=tuple(states),
        initial=initial,
        transition=transition,
        observation=observation,
        utility=UtilitySpec.tabular(table),
        actions=tuple(cset.actions),
        observations=tuple(cset.observations),
        horizon=cset.horizon,
        selector_prior=weights,
    )


def mixture_value(cset: CompatibleSet, weights, policy) -> float:
    """Sum over players of weight times that player's own expected utility."""
    weights = as_weights(weights)
    if len(weights) != cset.k:
        raise ModelError(f"got {len(weights)} weights for {cset.k} players")
    return sum(w * policy_value(p, policy) for w, p in zip(weights, cset.players) if w != 0.0)
