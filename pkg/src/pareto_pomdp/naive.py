"""Fixed-weight aggregation of conditional expectations, kept as a baseline.

At every history this baseline maximizes r * E^1[U^1 | h, a] + (1 - r) * E^2[U^2 | h, a]
with the weight r never changing. Unlike the Pareto recursion it ignores how
well each player predicted the inputs so far, which is what makes it lose to
observation-contingent bets when beliefs differ.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

from .model import CompatibleSet, ModelError, require_valid
from .pareto import DOMINANCE_TOL
from .policy import Policy
from .probability import policy_value
from .solver import argmax_lowest, backward_induction


def _require_pair(cset: CompatibleSet) -> None:
    if cset.k != 2:
        raise ModelError(f"naive baseline defined for two players, got {cset.k}")


def solve_naive(cset: CompatibleSet, r: float) -> Policy:
    _require_pair(cset)
    require_valid(cset)
    r = float(r)
    if not 0.0 <= r <= 1.0:
        raise ModelError(f"r must lie in [0, 1], got {r}")
    coef = (r, 1.0 - r)

    def chooser(q, evidence):
        # a player who rules the history out contributes 0
        scores = [sum(c * q[j][ai] / evidence[j] for j, c in enumerate(coef) if evidence[j] > 0.0)
                  for ai in range(len(q[0]))]
        return argmax_lowest(scores)

    return backward_induction(cset.players, cset.actions, cset.observations, cset.horizon,
                              chooser, {"route": "naive", "r": r})


@dataclass
class NaiveComparison:
    r: float
    values: tuple
    reference_values: tuple
    worse_for: tuple

    @property
    def strictly_worse(self) -> bool:
        """Naive policy is strictly worse than the reference for at least one player."""
        return bool(self.worse_for)

    @property
    def verdict(self) -> str:
        return "strictly-worse" if self.strictly_worse else "not-worse"


def compare_naive(cset: CompatibleSet, r_grid: Sequence[float],
                  reference: Union[Policy, Callable[[float], Policy]],
                  tol: float = DOMINANCE_TOL) -> list[NaiveComparison]:
    """Evaluate the baseline at each r against a reference policy.

    ``reference`` is either one policy used for every r, or a callable
    returning the reference for a given r.
    """
    _require_pair(cset)
    out = []
    for r in r_grid:
        ref = reference(r) if callable(reference) else reference
        ref_values = tuple(policy_value(p, ref) for p in cset.players)
        policy = solve_naive(cset, r)
        values = tuple(policy_value(p, policy) for p in cset.players)
        worse = tuple(j for j, (v, rv) in enumerate(zip(values, ref_values)) if v < rv - tol)
        out.append(NaiveComparison(float(r), values, ref_values, worse))
    return out
