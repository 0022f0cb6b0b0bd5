"""Per-player POMDP outlooks, compatible sets and weight vectors.

An outlook bundles one player's beliefs about the environment (initial
distribution, transitions, observation kernel) with that player's utility over
whole state sequences. Outlooks are compatible when they share actions,
observations and horizon, so that one policy can be evaluated under all of them.

Validation never raises on well-formed containers; problems come back as a
list of human-readable violation strings.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

PROB_TOL = 1e-9
CLAMP_TOL = 1e-12

Label = Hashable


class ModelError(ValueError):
    """Raised when an operation is given an invalid model or weight vector."""


def _check_labels(kind: str, labels: Sequence) -> list[str]:
    problems = []
    if len(labels) == 0:
        problems.append(f"{kind} set is empty")
    seen = set()
    for lab in labels:
        if lab in seen:
            problems.append(f"{kind} label {lab!r} is duplicated")
        seen.add(lab)
    return problems


@dataclass(frozen=True)
class ActionSet:
    labels: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        problems = _check_labels("action", self.labels)
        if problems:
            raise ModelError("; ".join(problems))

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)

    def index(self, label) -> int:
        return self.labels.index(label)


@dataclass(frozen=True)
class ObservationSet:
    labels: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        problems = _check_labels("observation", self.labels)
        if problems:
            raise ModelError("; ".join(problems))

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)

    def index(self, label) -> int:
        return self.labels.index(label)


@dataclass(frozen=True)
class UtilitySpec:
    """Utility over state sequences s_1 .. s_{n+1}.

    ``additive`` maps each state label to a value and scores a sequence by the
    sum over every visited state. ``tabular`` maps full sequences (tuples) to
    values directly; looking up a sequence absent from the table is an error.
    """

    kind: str
    values: Mapping | None = None
    table: Mapping | None = None

    @classmethod
    def additive(cls, values: Mapping) -> "UtilitySpec":
        return cls("additive", values=dict(values))

    @classmethod
    def tabular(cls, table: Mapping) -> "UtilitySpec":
        return cls("tabular", table={tuple(k): v for k, v in table.items()})

    def value(self, sequence: Sequence) -> float:
        if self.kind == "additive":
            return float(sum(self.values[s] for s in sequence))
        if self.kind == "tabular":
            seq = tuple(sequence)
            try:
                return float(self.table[seq])
            except KeyError:
                raise ModelError(f"utility table has no entry for sequence {seq!r}") from None
        raise ModelError(f"unknown utility kind {self.kind!r}")

    def scaled(self, factor: float) -> "UtilitySpec":
        if self.kind == "additive":
            return UtilitySpec.additive({s: factor * v for s, v in self.values.items()})
        return UtilitySpec.tabular({k: factor * v for k, v in self.table.items()})

    def as_table(self, sequences: Iterable[Sequence]) -> dict:
        """Expand to tabular semantics over the given sequences."""
        return {tuple(seq): self.value(seq) for seq in sequences}


@dataclass(frozen=True, eq=False)
class PlayerOutlook:
    """One player's POMDP: beliefs plus utility.

    Probability vectors are sparse mappings label -> probability; absent labels
    carry probability zero. ``transition`` is keyed by ``(state, action)``.
    ``actions``, ``observations`` and ``horizon`` are optional declarations of the
    outlook's own interface; left as None, the outlook adopts whatever set it
    is placed in.
    """

    name: str
    states: tuple
    initial: Mapping
    transition: Mapping
    observation: Mapping
    utility: UtilitySpec
    actions: tuple | None = None
    observations: tuple | None = None
    horizon: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))

    def initial_support(self) -> Iterator[tuple]:
        for s, p in self.initial.items():
            p = clamp(p)
            if p > 0.0:
                yield s, p

    def next_states(self, state, action) -> Iterator[tuple]:
        for s, p in self.transition[(state, action)].items():
            p = clamp(p)
            if p > 0.0:
                yield s, p

    def observation_prob(self, state, obs) -> float:
        return clamp(self.observation[state].get(obs, 0.0))


@dataclass(frozen=True)
class WeightVector:
    weights: tuple

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) == 0:
            raise ModelError("weight vector is empty")
        if any(not math.isfinite(x) or x < 0.0 for x in w):
            raise ModelError(f"weights must be finite and non-negative, got {w}")
        if abs(sum(w) - 1.0) > PROB_TOL:
            raise ModelError(f"weights must sum to 1, got sum {sum(w)!r}")

    def __iter__(self):
        return iter(self.weights)

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, i):
        return self.weights[i]


def as_weights(weights) -> WeightVector:
    return weights if isinstance(weights, WeightVector) else WeightVector(tuple(weights))


@dataclass(frozen=True, eq=False)
class CompatibleSet:
    actions: ActionSet
    observations: ObservationSet
    horizon: int
    players: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "players", tuple(self.players))

    @property
    def k(self) -> int:
        return len(self.players)


def clamp(p: float) -> float:
    """Snap values within rounding distance of [0, 1] onto the interval."""
    if -CLAMP_TOL <= p < 0.0:
        return 0.0
    if 1.0 < p <= 1.0 + CLAMP_TOL:
        return 1.0
    return p


def _check_vector(where: str, vec, labels: Sequence) -> list[str]:
    if not isinstance(vec, Mapping):
        return [f"{where} is not a mapping"]
    problems = []
    known = set(labels)
    total = 0.0
    for lab, p in vec.items():
        if lab not in known:
            problems.append(f"{where} refers to unknown label {lab!r}")
            continue
        if isinstance(p, bool) or not isinstance(p, (int, float)) or not math.isfinite(p):
            problems.append(f"{where}[{lab!r}] is not a finite number: {p!r}")
            continue
        p = clamp(p)
        if p < 0.0 or p > 1.0:
            problems.append(f"{where}[{lab!r}] = {p!r} lies outside [0, 1]")
        total += p
    if not problems and abs(total - 1.0) > PROB_TOL:
        problems.append(f"{where} sums to {total:.12g}")
    return problems


def reachable_sequences(outlook: PlayerOutlook, actions: Sequence, horizon: int) -> set[tuple]:
    """State sequences of length horizon+1 with positive probability under some action plan."""
    frontier = {(s,) for s, p in outlook.initial.items() if clamp(p) > 0.0}
    for _ in range(horizon):
        nxt = set()
        for seq in frontier:
            for a in actions:
                row = outlook.transition.get((seq[-1], a), {})
                nxt.update(seq + (s,) for s, p in row.items() if clamp(p) > 0.0)
        frontier = nxt
    return frontier


def validate_outlook(outlook: PlayerOutlook, actions, observations, horizon: int) -> list[str]:
    """List every way ``outlook`` breaks the outlook invariants against the shared sets."""
    name = getattr(outlook, "name", "?")
    pre = f"player {name!r}: "
    actions = tuple(actions)
    observations = tuple(observations)
    states = tuple(outlook.states)
    problems = [pre + p for p in _check_labels("state", states)]
    if problems:
        return problems

    problems += [pre + p for p in _check_vector("initial", outlook.initial, states)]
    for s in states:
        for a in actions:
            if (s, a) not in outlook.transition:
                problems.append(pre + f"transition row ({s!r}, {a!r}) is missing")
            else:
                problems += [pre + p for p in _check_vector(
                    f"transition row ({s!r}, {a!r})", outlook.transition[(s, a)], states)]
        if s not in outlook.observation:
            problems.append(pre + f"observation row {s!r} is missing")
        else:
            problems += [pre + p for p in _check_vector(
                f"observation row {s!r}", outlook.observation[s], observations)]
    for key in outlook.transition:
        if not (isinstance(key, tuple) and len(key) == 2 and key[0] in states and key[1] in actions):
            problems.append(pre + f"transition has unexpected key {key!r}")
    for key in outlook.observation:
        if key not in states:
            problems.append(pre + f"observation has unexpected key {key!r}")

    util = outlook.utility
    if not isinstance(util, UtilitySpec):
        problems.append(pre + "utility is not a UtilitySpec")
    elif util.kind == "additive":
        values = util.values or {}
        for s in states:
            if s not in values:
                problems.append(pre + f"additive utility has no value for state {s!r}")
        problems += [pre + f"additive utility refers to unknown state {s!r}"
                     for s in values if s not in states]
    elif util.kind == "tabular":
        if not problems:
            table = util.table or {}
            missing = sorted(reachable_sequences(outlook, actions, horizon) - set(table), key=repr)
            problems += [pre + f"utility table has no entry for reachable sequence {seq!r}"
                         for seq in missing]
    else:
        problems.append(pre + f"unknown utility kind {util.kind!r}")
    return problems


def check_compatibility(cset: CompatibleSet) -> list[str]:
    """Violations preventing ``cset`` from being treated as a compatible set."""
    problems = []
    if not isinstance(cset.horizon, int) or isinstance(cset.horizon, bool) or cset.horizon < 1:
        problems.append(f"horizon must be a positive integer, got {cset.horizon!r}")
        return problems
    if len(cset.players) < 2:
        problems.append(f"a compatible set needs at least 2 players, got {len(cset.players)}")
    names = [p.name for p in cset.players]
    if len(set(names)) != len(names):
        problems.append("player names are not unique")
    for player in cset.players:
        if player.actions is not None and set(player.actions) != set(cset.actions):
            problems.append(f"action sets differ: player {player.name!r} declares "
                            f"{list(player.actions)}, shared set is {list(cset.actions)}")
        if player.observations is not None and set(player.observations) != set(cset.observations):
            problems.append(f"observation sets differ: player {player.name!r} declares "
                            f"{list(player.observations)}, shared set is {list(cset.observations)}")
        if player.horizon is not None and player.horizon != cset.horizon:
            problems.append(f"horizon mismatch: player {player.name!r} has horizon "
                            f"{player.horizon}, shared horizon is {cset.horizon}")
    for player in cset.players:
        problems += validate_outlook(player, cset.actions, cset.observations, cset.horizon)
    return problems


def require_valid(cset: CompatibleSet) -> None:
    problems = check_compatibility(cset)
    if problems:
        raise ModelError("invalid compatible set:\n  " + "\n  ".join(problems))


def require_valid_outlook(outlook: PlayerOutlook, actions, observations, horizon: int) -> None:
    problems = validate_outlook(outlook, actions, observations, horizon)
    if problems:
        raise ModelError("invalid outlook:\n  " + "\n  ".join(problems))


def all_sequences(states: Sequence, horizon: int) -> Iterator[tuple]:
    return itertools.product(states, repeat=horizon + 1)
