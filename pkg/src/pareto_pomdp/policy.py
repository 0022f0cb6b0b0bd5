"""Histories and contingent-plan policies."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .model import PROB_TOL, ModelError


@dataclass(frozen=True)
class History:
    """What the machine has seen before choosing its i-th action.

    ``observations`` holds o_1 .. o_i and ``actions`` holds a_1 .. a_{i-1}.
    """

    observations: tuple = ()
    actions: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "observations", tuple(self.observations))
        object.__setattr__(self, "actions", tuple(self.actions))
        n_obs, n_act = len(self.observations), len(self.actions)
        if not (n_obs == n_act + 1 or n_obs == n_act == 0):
            raise ModelError(
                f"history needs one more observation than actions, got "
                f"{n_obs} observations and {n_act} actions")

    @property
    def step(self) -> int:
        return len(self.observations)

    def extend(self, action, observation) -> "History":
        return History(self.observations + (observation,), self.actions + (action,))

    def interleaved(self) -> tuple:
        out = []
        for i, o in enumerate(self.observations):
            out.append(o)
            if i < len(self.actions):
                out.append(self.actions[i])
        return tuple(out)

    def key(self) -> str:
        return ",".join(str(x) for x in self.interleaved())

    @classmethod
    def from_interleaved(cls, items: Sequence) -> "History":
        items = tuple(items)
        return cls(items[0::2], items[1::2])

    def __str__(self):
        return self.key() or "<empty>"


def iter_histories(actions: Sequence, observations: Sequence, horizon: int) -> Iterator[History]:
    """Every history at steps 1..horizon, ordered by step, then lexicographically by index."""
    for step in range(1, horizon + 1):
        for obs in itertools.product(observations, repeat=step):
            for acts in itertools.product(actions, repeat=step - 1):
                yield History(obs, acts)


def history_count(n_actions: int, n_observations: int, horizon: int) -> int:
    return sum(n_observations ** i * n_actions ** (i - 1) for i in range(1, horizon + 1))


@dataclass(eq=False)
class Policy:
    """A complete contingent plan: an action distribution for every history."""

    actions: tuple
    observations: tuple
    horizon: int
    table: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.actions = tuple(self.actions)
        self.observations = tuple(self.observations)

    def distribution(self, history: History) -> Mapping:
        try:
            return self.table[history]
        except KeyError:
            raise ModelError(f"policy has no action distribution for history {history}") from None

    def components(self) -> list[tuple[float, "Policy"]]:
        return [(1.0, self)]

    def is_deterministic(self) -> bool:
        return all(max(d.values()) == 1.0 for d in self.table.values())

    def action_at(self, history: History):
        """The most probable action at ``history`` (ties broken by action order)."""
        dist = self.distribution(history)
        return max(self.actions, key=lambda a: (dist.get(a, 0.0), -self.actions.index(a)))

    def problems(self) -> list[str]:
        out = []
        for h in iter_histories(self.actions, self.observations, self.horizon):
            if h not in self.table:
                out.append(f"history {h} is missing")
                continue
            dist = self.table[h]
            if any(a not in self.actions for a in dist):
                out.append(f"history {h} uses an unknown action")
            if any(p < -PROB_TOL for p in dist.values()) or abs(sum(dist.values()) - 1.0) > PROB_TOL:
                out.append(f"history {h} does not carry a probability distribution")
        return out

    @classmethod
    def deterministic(cls, actions, observations, horizon, choice, metadata=None) -> "Policy":
        """Build from ``choice(history) -> action``."""
        actions = tuple(actions)
        table = {}
        for h in iter_histories(actions, tuple(observations), horizon):
            chosen = choice(h)
            table[h] = {a: (1.0 if a == chosen else 0.0) for a in actions}
        return cls(actions, observations, horizon, table, dict(metadata or {}))

    @classmethod
    def constant(cls, actions, observations, horizon, action) -> "Policy":
        return cls.deterministic(actions, observations, horizon, lambda h: action,
                                 {"route": f"constant {action}"})


@dataclass(eq=False)
class MixedPolicy:
    """Once-and-for-all randomization over component policies.

    The seed is drawn before the first input, so each component governs a
    whole episode; values are therefore coefficient-weighted sums of the
    component values rather than the value of any per-history average.
    """

    policies: tuple
    coefficients: tuple
    metadata: dict = field(default_factory=dict)

    def components(self) -> list[tuple[float, Policy]]:
        return list(zip(self.coefficients, self.policies))

    @property
    def horizon(self) -> int:
        return self.policies[0].horizon
