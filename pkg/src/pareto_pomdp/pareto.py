"""Pareto dominance and frontier sweeps over weight vectors."""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .model import CompatibleSet, ModelError, WeightVector, require_valid
from .policy import Policy
from .probability import policy_value
from .solver import solve_pareto

DOMINANCE_TOL = 1e-9
DEDUP_DECIMALS = 9


def dominates(a: Sequence[float], b: Sequence[float], tol: float = DOMINANCE_TOL) -> bool:
    """True iff ``a`` is at least ``b`` everywhere and strictly better somewhere."""
    if len(a) != len(b):
        raise ModelError(f"cannot compare vectors of lengths {len(a)} and {len(b)}")
    return all(x >= y - tol for x, y in zip(a, b)) and any(x > y + tol for x, y in zip(a, b))


def non_dominated(vectors: Sequence[Sequence[float]], tol: float = DOMINANCE_TOL) -> list[int]:
    """Indices of the vectors no other vector dominates."""
    return [i for i, v in enumerate(vectors)
            if not any(dominates(u, v, tol) for j, u in enumerate(vectors) if j != i)]


@dataclass
class FrontierPoint:
    weights: WeightVector
    values: tuple
    policy: Policy


def weight_grid(k: int, grid_size: int) -> list[WeightVector]:
    """Simplex grid with ``grid_size`` points per axis.

    For two players this is w1 in {0, 1/(g-1), ..., 1}, listed with w1 ascending.
    """
    if isinstance(grid_size, bool) or not isinstance(grid_size, int) or grid_size < 2:
        raise ModelError(f"grid size must be an integer >= 2, got {grid_size!r}")
    if k < 2:
        raise ModelError("need at least two players")
    steps = grid_size - 1
    out = []
    for head in itertools.product(range(steps + 1), repeat=k - 1):
        if sum(head) > steps:
            continue
        parts = [*head, steps - sum(head)]
        out.append(WeightVector(tuple(float(Fraction(p, steps)) for p in parts)))
    return out


def _solve_point(cset: CompatibleSet, w: WeightVector) -> FrontierPoint:
    policy = solve_pareto(cset, w)
    return FrontierPoint(w, tuple(policy_value(p, policy) for p in cset.players), policy)


def sweep_frontier(cset: CompatibleSet, grid_size: int, workers: int | None = None) -> list[FrontierPoint]:
    """One supporting Pareto point per grid weight, deduplicated and filtered.

    Points with equal value vectors (to 9 decimals) keep the first grid weight.
    Zero-weight grid corners may land on a weakly dominated optimum; those are
    dropped so no returned point dominates another.
    """
    require_valid(cset)
    grid = weight_grid(cset.k, grid_size)
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            points = list(pool.map(lambda w: _solve_point(cset, w), grid))
    else:
        points = [_solve_point(cset, w) for w in grid]

    seen, unique = set(), []
    for pt in points:
        key = tuple(round(v, DEDUP_DECIMALS) + 0.0 for v in pt.values)
        if key not in seen:
            seen.add(key)
            unique.append(pt)
    keep = non_dominated([pt.values for pt in unique])
    return [unique[i] for i in keep]
