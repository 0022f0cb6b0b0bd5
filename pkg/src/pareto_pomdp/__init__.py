"""Exact Pareto optimal sequential decisions for players with differing beliefs."""

from .files import ModelFileError, bundled_model, load_model, load_policy
from .mixture import MixtureOutlook, build_mixture, mixture_value
from .model import (ActionSet, CompatibleSet, ModelError, ObservationSet, PlayerOutlook,
                    UtilitySpec, WeightVector, check_compatibility, validate_outlook)
from .naive import compare_naive, solve_naive
from .oracle import brute_force_frontier, brute_force_max
from .pareto import FrontierPoint, dominates, sweep_frontier
from .policy import History, MixedPolicy, Policy
from .probability import (PrefixBelief, Trajectory, conditional_expected_utility, do_probability,
                          joint_probability, policy_value, prefix_posterior)
from .solver import (PriorityTrace, mix_policies, priority_trace, solve_pareto, solve_single,
                     verify_recursion)

__all__ = [
    "ActionSet", "CompatibleSet", "FrontierPoint", "History", "MixedPolicy", "MixtureOutlook",
    "ModelError", "ModelFileError", "ObservationSet", "PlayerOutlook", "Policy", "PrefixBelief", "PriorityTrace",
    "Trajectory", "UtilitySpec", "WeightVector", "brute_force_frontier", "brute_force_max",
    "build_mixture", "bundled_model", "check_compatibility",
    "compare_naive", "conditional_expected_utility", "do_probability", "dominates",
    "joint_probability", "load_model", "load_policy", "mix_policies", "mixture_value", "policy_value", "prefix_posterior",
    "priority_trace", "solve_naive", "solve_pareto", "solve_single", "sweep_frontier",
    "validate_outlook", "verify_recursion",
]
