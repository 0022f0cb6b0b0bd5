"""Exact probabilities and expectations under a single outlook.

Utilities are defined on whole state sequences, so filtering tracks joint
weights over state *prefixes* (s_1 .. s_i) rather than over current states.
Everything is an exact enumeration; nothing here samples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .model import ModelError, PlayerOutlook
from .policy import History, MixedPolicy, Policy

# Joint weights P(s_1..s_i, o_1..o_i | do(a_1..a_{i-1})), keyed by state prefix.
Prefixes = dict


@dataclass(frozen=True)
class Trajectory:
    states: tuple
    observations: tuple
    actions: tuple

    def __post_init__(self):
        for name in ("states", "observations", "actions"):
            object.__setattr__(self, name, tuple(getattr(self, name)))


@dataclass(frozen=True)
class PrefixBelief:
    """Belief over state prefixes given a history.

    ``evidence`` is the do-probability of the history. A history the outlook
    deems impossible yields ``entries == {}`` with ``evidence == 0``; check
    ``impossible`` before using the entries.
    """

    entries: dict = field(default_factory=dict)
    normalized: bool = True
    evidence: float = 1.0

    @property
    def impossible(self) -> bool:
        return self.evidence == 0.0


IMPOSSIBLE_HISTORY = PrefixBelief({}, normalized=False, evidence=0.0)


def initial_prefixes(outlook: PlayerOutlook, first_obs) -> Prefixes:
    return observe(outlook, {(s,): p for s, p in outlook.initial_support()}, first_obs)


def observe(outlook: PlayerOutlook, prefixes: Prefixes, obs) -> Prefixes:
    out = {}
    for seq, w in prefixes.items():
        q = outlook.observation_prob(seq[-1], obs)
        if q > 0.0:
            out[seq] = w * q
    return out


def advance(outlook: PlayerOutlook, prefixes: Prefixes, action) -> Prefixes:
    out: Prefixes = {}
    for seq, w in prefixes.items():
        for s, p in outlook.next_states(seq[-1], action):
            key = seq + (s,)
            out[key] = out.get(key, 0.0) + w * p
    return out


def filter_history(outlook: PlayerOutlook, observations: Sequence, actions: Sequence) -> Prefixes:
    """Joint prefix weights after the given observations and actions.

    Accepts the history form (one more observation than actions) and the full
    form (equal lengths, the last action applied after the last observation).
    """
    observations, actions = tuple(observations), tuple(actions)
    if len(observations) not in (len(actions), len(actions) + 1):
        raise ModelError(
            f"need len(observations) == len(actions) or len(actions) + 1, "
            f"got {len(observations)} and {len(actions)}")
    if not observations:
        if actions:
            raise ModelError("actions given without observations")
        return {(s,): p for s, p in outlook.initial_support()}
    prefixes = initial_prefixes(outlook, observations[0])
    for i in range(1, len(observations)):
        prefixes = observe(outlook, advance(outlook, prefixes, actions[i - 1]), observations[i])
    if len(actions) == len(observations):
        prefixes = advance(outlook, prefixes, actions[-1])
    return prefixes


def _check_labels(outlook, observations, actions):
    # sparse rows cannot reveal the observation set, so only declared sets are checked
    if outlook.observations is not None:
        for o in observations:
            if o not in outlook.observations:
                raise ModelError(f"unknown observation label {o!r}")
    known_actions = outlook.actions if outlook.actions is not None else \
        {a for (_, a) in outlook.transition}
    for a in actions:
        if a not in known_actions:
            raise ModelError(f"unknown action label {a!r}")


def do_probability(outlook: PlayerOutlook, observations: Sequence, actions: Sequence) -> float:
    """P(o_1..o_i | do(a_1..a_{i-1})): observation likelihood with the actions held fixed."""
    _check_labels(outlook, observations, actions)
    return sum(filter_history(outlook, observations, actions).values())


def prefix_posterior(outlook: PlayerOutlook, history: History) -> PrefixBelief:
    _check_labels(outlook, history.observations, history.actions)
    joint = filter_history(outlook, history.observations, history.actions)
    evidence = sum(joint.values())
    if evidence == 0.0:
        return IMPOSSIBLE_HISTORY
    return PrefixBelief({seq: w / evidence for seq, w in joint.items()}, True, evidence)


def _policy_components(policy):
    if isinstance(policy, (Policy, MixedPolicy)):
        return policy.components()
    raise TypeError(f"expected a Policy or MixedPolicy, got {type(policy).__name__}")


def action_value(outlook: PlayerOutlook, prefixes: Prefixes, history: History, action,
                 continuation: Policy | None, horizon: int) -> float:
    """Unnormalized expected utility of taking ``action`` after ``history``.

    Returns sum over extensions of joint weight times utility; dividing by the
    history's do-probability gives the conditional expectation.
    """
    nxt = advance(outlook, prefixes, action)
    if not nxt:
        return 0.0
    if history.step >= horizon:
        return sum(w * outlook.utility.value(seq) for seq, w in nxt.items())
    if continuation is None:
        raise ModelError(f"history {history} is before the last step; a continuation policy is needed")
    total = 0.0
    for obs in continuation.observations:
        child_prefixes = observe(outlook, nxt, obs)
        if child_prefixes:
            total += node_value(outlook, child_prefixes, history.extend(action, obs),
                                continuation, horizon)
    return total


def node_value(outlook: PlayerOutlook, prefixes: Prefixes, history: History,
               policy: Policy, horizon: int) -> float:
    """Unnormalized value of following ``policy`` from ``history`` onward."""
    dist = policy.distribution(history)
    total = 0.0
    for a, p in dist.items():
        if p > 0.0:
            total += p * action_value(outlook, prefixes, history, a, policy, horizon)
    return total


def conditional_expected_utility(outlook: PlayerOutlook, history: History, action,
                                 continuation: Policy | None = None,
                                 horizon: int | None = None) -> float:
    """E[U | history, take ``action`` now, follow ``continuation`` afterwards].

    ``horizon`` defaults to the continuation's horizon, or to the history's
    step when there is no continuation (i.e. ``action`` is the last one).
    """
    _check_labels(outlook, history.observations, (*history.actions, action))
    if horizon is None:
        horizon = continuation.horizon if continuation is not None else history.step
    if history.step < 1 or history.step > horizon:
        raise ModelError(f"history {history} is not a decision point within horizon {horizon}")
    prefixes = filter_history(outlook, history.observations, history.actions)
    evidence = sum(prefixes.values())
    if evidence == 0.0:
        raise ModelError(f"conditioning on probability-zero history {history}")
    return action_value(outlook, prefixes, history, action, continuation, horizon) / evidence


def policy_value(outlook: PlayerOutlook, policy) -> float:
    """E[U; policy]: exact expected utility of ``policy`` under ``outlook``."""
    total = 0.0
    for coef, component in _policy_components(policy):
        if coef == 0.0:
            continue
        value = 0.0
        for obs in component.observations:
            prefixes = initial_prefixes(outlook, obs)
            if prefixes:
                value += node_value(outlook, prefixes, History((obs,)), component,
                                    component.horizon)
        total += coef * value
    return total


def joint_probability(outlook: PlayerOutlook, policy, trajectory: Trajectory) -> float:
    """Probability of one full (states, observations, actions) outcome under ``policy``."""
    components = _policy_components(policy)
    horizon = components[0][1].horizon
    s, o, a = trajectory.states, trajectory.observations, trajectory.actions
    if len(s) != horizon + 1:
        raise ModelError(f"trajectory states has length {len(s)}, expected {horizon + 1}")
    if len(o) != horizon:
        raise ModelError(f"trajectory observations has length {len(o)}, expected {horizon}")
    if len(a) != horizon:
        raise ModelError(f"trajectory actions has length {len(a)}, expected {horizon}")

    env = outlook.initial.get(s[0], 0.0)
    for i in range(horizon):
        env *= outlook.observation_prob(s[i], o[i])
        env *= outlook.transition[(s[i], a[i])].get(s[i + 1], 0.0)
        if env == 0.0:
            return 0.0

    total = 0.0
    for coef, component in components:
        p = coef
        for i in range(horizon):
            p *= component.distribution(History(o[:i + 1], a[:i])).get(a[i], 0.0)
            if p == 0.0:
                break
        total += p
    return env * total
