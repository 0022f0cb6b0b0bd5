"""Brute-force verification by enumerating every deterministic policy.

Values are computed straight from the trajectory-probability product summed
over all state sequences, sharing no code with the filtering in
``probability`` or the backward induction in ``solver``. Enumeration is
vectorized: policy ``k`` is the base-|A| expansion of ``k``, one digit per
history in ``iter_histories`` order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np
from scipy.optimize import linprog

from .model import CompatibleSet, ModelError, as_weights, require_valid
from .pareto import DEDUP_DECIMALS, DOMINANCE_TOL, non_dominated
from .policy import Policy, history_count, iter_histories

DEFAULT_CAP = 10**6
CHUNK = 1 << 18


class EnumerationCapExceeded(ModelError):
    def __init__(self, required: int, cap: int):
        super().__init__(f"enumeration needs {required} deterministic policies, cap is {cap}")
        self.required = required
        self.cap = cap


def count_deterministic_policies(n_actions: int, n_observations: int, horizon: int) -> int:
    return n_actions ** history_count(n_actions, n_observations, horizon)


def _check_cap(actions, observations, horizon, cap) -> int:
    count = count_deterministic_policies(len(actions), len(observations), horizon)
    if count > cap:
        raise EnumerationCapExceeded(count, cap)
    return count


def policy_from_index(actions, observations, horizon: int, index: int) -> Policy:
    actions, observations = tuple(actions), tuple(observations)
    table = {}
    for h in iter_histories(actions, observations, horizon):
        index, digit = divmod(index, len(actions))
        table[h] = {a: (1.0 if i == digit else 0.0) for i, a in enumerate(actions)}
    return Policy(actions, observations, horizon, table, {"route": "enumerated"})


def enumerate_deterministic_policies(actions, observations, horizon: int,
                                     cap: int = DEFAULT_CAP) -> Iterator[Policy]:
    count = _check_cap(actions, observations, horizon, cap)
    for k in range(count):
        yield policy_from_index(actions, observations, horizon, k)


def outcome_utility_table(player, actions, observations, horizon: int) -> np.ndarray:
    """W[o-seq, a-seq] = sum over state sequences of P(s, o | do(a)) * U(s).

    Sequences are indexed in mixed radix with the first element most significant.
    """
    n_a, n_o = len(actions), len(observations)
    W = np.zeros((n_o ** horizon, n_a ** horizon))
    seqs = list(itertools.product(player.states, repeat=horizon + 1))
    for oi, obs in enumerate(itertools.product(observations, repeat=horizon)):
        for ai, acts in enumerate(itertools.product(actions, repeat=horizon)):
            total = 0.0
            for seq in seqs:
                p = player.initial.get(seq[0], 0.0)
                for i in range(horizon):
                    if p == 0.0:
                        break
                    p *= player.observation[seq[i]].get(obs[i], 0.0)
                    p *= player.transition[(seq[i], acts[i])].get(seq[i + 1], 0.0)
                if p != 0.0:
                    total += p * player.utility.value(seq)
            W[oi, ai] = total
    return W


def value_matrix(cset: CompatibleSet, cap: int = DEFAULT_CAP) -> np.ndarray:
    """Array of shape (policies, players): every deterministic policy's value vector."""
    require_valid(cset)
    A, O, n = len(cset.actions), len(cset.observations), cset.horizon
    count = _check_cap(cset.actions, cset.observations, n, cap)
    tables = [outcome_utility_table(p, cset.actions, cset.observations, n) for p in cset.players]

    offsets = np.cumsum([0] + [O ** i * A ** (i - 1) for i in range(1, n + 1)])
    n_hist = int(offsets[-1])
    place = np.array([A ** c for c in range(n_hist)], dtype=np.int64)
    obs_seqs = list(itertools.product(range(O), repeat=n))

    out = np.empty((count, len(tables)))
    for start in range(0, count, CHUNK):
        idx = np.arange(start, min(start + CHUNK, count), dtype=np.int64)
        vals = np.zeros((idx.size, len(tables)))
        for oi, obs in enumerate(obs_seqs):
            aidx = np.zeros(idx.size, dtype=np.int64)
            oidx = 0
            for i in range(1, n + 1):
                oidx = oidx * O + obs[i - 1]
                col = offsets[i - 1] + oidx * A ** (i - 1) + aidx
                action = (idx // place[col]) % A
                aidx = aidx * A + action
            for j, W in enumerate(tables):
                vals[:, j] += W[oi, aidx]
        out[start:start + idx.size] = vals
    return out


@dataclass
class OracleMax:
    value: float
    values: tuple
    policy: Policy


def brute_force_max(cset: CompatibleSet, weights, cap: int = DEFAULT_CAP,
                    values: np.ndarray | None = None) -> OracleMax:
    """Largest weighted value over all deterministic policies."""
    weights = as_weights(weights)
    if values is None:
        values = value_matrix(cset, cap)
    scores = values @ np.asarray(weights.weights)
    k = int(np.argmax(scores))
    return OracleMax(float(scores[k]), tuple(float(v) for v in values[k]),
                     policy_from_index(cset.actions, cset.observations, cset.horizon, k))


def _pareto_candidates(values: np.ndarray) -> np.ndarray:
    """Indices of representatives that survive a cheap dominance pre-filter."""
    keys = np.round(values, DEDUP_DECIMALS) + 0.0
    _, first = np.unique(keys, axis=0, return_index=True)
    first = np.sort(first)
    if values.shape[1] != 2:
        return first
    # two players: sweep by descending first coordinate, keep running max of the second
    order = first[np.lexsort((-values[first, 1], -values[first, 0]))]
    # (a superset: exact pairwise checks follow)
    kept, best = [], -np.inf
    for i in order:
        if values[i, 1] > best - DOMINANCE_TOL:
            kept.append(i)
            best = max(best, values[i, 1])
    return np.array(kept, dtype=np.int64)


def brute_force_frontier(cset: CompatibleSet, cap: int = DEFAULT_CAP,
                         values: np.ndarray | None = None) -> list[tuple[tuple, Policy]]:
    """Non-dominated deterministic value vectors, each with one policy attaining it.

    Sorted lexicographically by value vector.
    """
    if values is None:
        values = value_matrix(cset, cap)
    cand = _pareto_candidates(values)
    vectors = [tuple(float(x) for x in values[i]) for i in cand]
    survivors = non_dominated(vectors)
    result = [(vectors[s], policy_from_index(cset.actions, cset.observations, cset.horizon,
                                             int(cand[s])))
              for s in survivors]
    result.sort(key=lambda item: item[0])
    return result


def covered_by_hull(point, vertices, tol: float = DOMINANCE_TOL) -> bool:
    """Whether some convex combination of ``vertices`` is >= ``point`` componentwise."""
    V = np.asarray(vertices, dtype=float)
    if V.size == 0:
        return False
    m, k = V.shape
    res = linprog(np.zeros(m), A_ub=-V.T, b_ub=-(np.asarray(point, dtype=float) - tol),
                  A_eq=np.ones((1, m)), b_eq=[1.0], bounds=[(0, None)] * m, method="highs")
    return res.status == 0

