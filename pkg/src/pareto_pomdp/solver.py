"""Exact backward induction over the full history tree.

``solve_pareto`` goes through the weighted mixture and a single-outlook solve.
``verify_recursion`` checks the per-player form of the same optimality
condition directly from do-probabilities and conditional expectations, so the
two routes cross-check each other.

Practical limit: the history tree has sum_i |O|^i |A|^(i-1) nodes and the
prefix beliefs grow like |S|^(i+1); n <= 6 with |O|, |A| <= 3 is comfortable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .mixture import build_mixture
from .model import (PROB_TOL, CompatibleSet, ModelError, PlayerOutlook, as_weights,
                    require_valid, require_valid_outlook)
from .policy import History, MixedPolicy, Policy, iter_histories
from .probability import (advance, conditional_expected_utility, do_probability,
                          filter_history, initial_prefixes, observe)

TIE_TOL = 1e-9

# chooser(unnormalized q-values [player][action], evidence [player]) -> action index
Chooser = Callable[[list, list], int]


def argmax_lowest(scores: Sequence[float], tol: float = TIE_TOL) -> int:
    best = max(scores)
    for i, s in enumerate(scores):
        if s >= best - tol:
            return i
    raise AssertionError("unreachable")


def backward_induction(outlooks: Sequence[PlayerOutlook], actions: Sequence,
                       observations: Sequence, horizon: int, chooser: Chooser,
                       metadata: dict | None = None) -> Policy:
    """Deterministic policy choosing, at every history, ``chooser``'s pick.

    The chooser sees, for each outlook, the unnormalized value
    P(history | do(actions)) * E[U | history, a; continuation] of every action,
    together with each outlook's do-probability of the history. Histories with
    probability zero under every outlook are still visited so the plan is
    complete.
    """
    actions, observations = tuple(actions), tuple(observations)
    table: dict = {}

    def visit(history: History, prefixes: list) -> list:
        q = [[0.0] * len(actions) for _ in outlooks]
        for ai, a in enumerate(actions):
            nxt = [advance(o, p, a) for o, p in zip(outlooks, prefixes)]
            if history.step == horizon:
                for j, (o, pre) in enumerate(zip(outlooks, nxt)):
                    q[j][ai] = sum(w * o.utility.value(seq) for seq, w in pre.items())
                continue
            for obs in observations:
                child = [observe(o, pre, obs) for o, pre in zip(outlooks, nxt)]
                values = visit(history.extend(a, obs), child)
                for j, v in enumerate(values):
                    q[j][ai] += v
        evidence = [sum(p.values()) for p in prefixes]
        choice = chooser(q, evidence)
        table[history] = {a: (1.0 if i == choice else 0.0) for i, a in enumerate(actions)}
        return [row[choice] for row in q]

    for obs in observations:
        visit(History((obs,)), [initial_prefixes(o, obs) for o in outlooks])

    ordered = {h: table[h] for h in iter_histories(actions, observations, horizon)}
    return Policy(actions, observations, horizon, ordered, dict(metadata or {}))


def solve_single(outlook: PlayerOutlook, actions, observations, horizon: int) -> Policy:
    """Optimal policy for one outlook; ties go to the lowest-index action."""
    require_valid_outlook(outlook, actions, observations, horizon)
    return backward_induction([outlook], actions, observations, horizon,
                              lambda q, ev: argmax_lowest(q[0]),
                              {"route": "single", "outlook": outlook.name})


def solve_pareto(cset: CompatibleSet, weights) -> Policy:
    """Pareto optimal policy maximizing the weighted sum of players' own expected utilities."""
    weights = as_weights(weights)
    mix = build_mixture(cset, weights)
    policy = backward_induction([mix], cset.actions, cset.observations, cset.horizon,
                                lambda q, ev: argmax_lowest(q[0]))
    policy.metadata = {"route": "mixture", "weights": list(weights.weights)}
    return policy


@dataclass
class RecursionViolation:
    history: History
    gap: float
    objective: dict


@dataclass
class RecursionReport:
    passed: bool
    checked: int
    violations: list = field(default_factory=list)

    @property
    def first(self) -> RecursionViolation | None:
        return self.violations[0] if self.violations else None

    def __bool__(self):
        return self.passed


def recursion_objective(cset: CompatibleSet, weights, policy: Policy, history: History) -> dict:
    """Per-action weighted objective at ``history``, continuation given by ``policy``.

    Each player contributes weight * P(history | do(actions)) * E[U | history, a; policy];
    players to whom the history is impossible contribute nothing.
    """
    weights = as_weights(weights)
    scores = {a: 0.0 for a in cset.actions}
    for w, player in zip(weights, cset.players):
        if w == 0.0:
            continue
        evidence = do_probability(player, history.observations, history.actions)
        if evidence == 0.0:
            continue
        for a in cset.actions:
            ceu = conditional_expected_utility(player, history, a, policy, cset.horizon)
            scores[a] += w * evidence * ceu
    return scores


def verify_recursion(cset: CompatibleSet, weights, policy: Policy,
                     tolerance: float = TIE_TOL) -> RecursionReport:
    """Check that ``policy`` only uses maximizers of the priority-weighted objective.

    Histories impossible for every player are skipped. Violations are listed in
    history order; the gap is the objective shortfall of the worst supported action.
    """
    weights = as_weights(weights)
    require_valid(cset)
    violations, checked = [], 0
    for history in iter_histories(cset.actions, cset.observations, cset.horizon):
        if all(do_probability(p, history.observations, history.actions) == 0.0
               for p in cset.players):
            continue
        checked += 1
        scores = recursion_objective(cset, weights, policy, history)
        best = max(scores.values())
        dist = policy.distribution(history)
        gap = max((best - scores[a] for a, p in dist.items() if p > PROB_TOL), default=0.0)
        if gap > tolerance:
            violations.append(RecursionViolation(history, gap, scores))
    return RecursionReport(not violations, checked, violations)


@dataclass
class TraceStep:
    step: int
    observations: tuple
    actions: tuple
    raw: tuple
    normalized: tuple | None


@dataclass
class PriorityTrace:
    steps: list

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)

    def __getitem__(self, i):
        return self.steps[i]


def priority_trace(cset: CompatibleSet, weights, observations: Sequence,
                   actions: Sequence = ()) -> PriorityTrace:
    """Effective player priorities after each prefix of a history.

    Step i carries w^j * P^j(o_1..o_i | do(a_1..a_{i-1})) and its normalization;
    step 0 is the input weights.
    """
    weights = as_weights(weights)
    observations, actions = tuple(observations), tuple(actions)
    if len(actions) > len(observations):
        raise ModelError("history has more actions than observations")
    for o in observations:
        if o not in cset.observations:
            raise ModelError(f"unknown observation label {o!r}")
    for a in actions:
        if a not in cset.actions:
            raise ModelError(f"unknown action label {a!r}")
    steps = []
    for i in range(len(observations) + 1):
        obs, acts = observations[:i], actions[:max(i - 1, 0)]
        raw = tuple(w * sum(filter_history(p, obs, acts).values())
                    for w, p in zip(weights, cset.players))
        total = sum(raw)
        norm = tuple(r / total for r in raw) if total > 0.0 else None
        steps.append(TraceStep(i, obs, acts, raw, norm))
    return PriorityTrace(steps)


def mix_policies(policies: Sequence, coefficients: Sequence[float]):
    """Once-and-for-all mixture: pick one policy up front with the given probabilities."""
    policies, coefficients = list(policies), [float(c) for c in coefficients]
    if not policies or len(policies) != len(coefficients):
        raise ModelError("need one coefficient per policy")
    if any(c < 0.0 for c in coefficients) or abs(sum(coefficients) - 1.0) > PROB_TOL:
        raise ModelError(f"coefficients must be a probability vector, got {coefficients}")

    flat: list[tuple[float, Policy]] = []
    for c, p in zip(coefficients, policies):
        flat.extend((c * cc, comp) for cc, comp in p.components())
    ref = flat[0][1]
    for _, p in flat[1:]:
        if (p.actions, p.observations, p.horizon) != (ref.actions, ref.observations, ref.horizon) \
                or p.table.keys() != ref.table.keys():
            raise ModelError("policies do not share a history domain")

    kept = [(c, p) for c, p in flat if c > 0.0]
    if len(kept) == 1:
        return kept[0][1]
    return MixedPolicy(tuple(p for _, p in kept), tuple(c for c, _ in kept),
                       {"route": "mixture of policies"})
