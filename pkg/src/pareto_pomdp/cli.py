"""Command-line entry point.

Exit codes: 0 success, 2 invalid model or arguments, 3 unreadable or
unparseable input. A model argument starting with ``@`` names a bundled
example (``@cake``).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .files import ModelFileError, dump_model, load_model, load_policy, policy_to_dict
from .mixture import mixture_value
from .model import ModelError, WeightVector, check_compatibility, require_valid
from .naive import compare_naive, solve_naive
from .oracle import DEFAULT_CAP, brute_force_max, value_matrix
from .pareto import sweep_frontier
from .policy import History
from .probability import policy_value
from .solver import priority_trace, solve_pareto

EXIT_OK, EXIT_INPUT, EXIT_IO = 0, 2, 3
WEIGHT_SUM_TOL = 1e-6
DEFAULT_NAIVE_GRID = "0.2,1/3,0.5,2/3,0.8"


class InputError(Exception):
    """Bad command-line input; maps to exit status 2."""


def fmt(x: float) -> str:
    """9 significant digits; values within 1e-9 of an integer print as that integer."""
    r = round(x)
    if abs(x - r) <= 1e-9:
        return str(int(r))
    return f"{x:.9g}"


def fmt_vec(xs) -> str:
    return "(" + ", ".join(fmt(x) for x in xs) + ")"


def _number(text: str) -> float:
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a number: {text!r}") from None


def parse_weights(text: str, k: int) -> WeightVector:
    values = [_number(t) for t in text.split(",")]
    if len(values) != k:
        raise InputError(f"expected {k} weights, got {len(values)}")
    if any(v < 0 for v in values):
        raise InputError("weights must be non-negative")
    total = sum(values)
    if abs(total - 1.0) > WEIGHT_SUM_TOL:
        raise InputError(f"weights must sum to 1, got {fmt(total)}")
    if total != 1.0:
        values = [v / total for v in values]
        if abs(total - 1.0) > 1e-12:
            print(f"warning: weights summed to {total!r}; renormalized", file=sys.stderr)
    try:
        return WeightVector(tuple(values))
    except ModelError as exc:
        raise InputError(str(exc)) from None


def _load(path):
    cset = load_model(path)
    require_valid(cset)
    return cset


def _write_json(path, doc) -> None:
    try:
        Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    except OSError as exc:
        raise ModelFileError(f"cannot write {path}: {exc}") from None


def _emit(args, doc, lines) -> None:
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        for line in lines:
            print(line)


def _policy_lines(policy) -> list[str]:
    return [f"  {h.key()} -> {policy.action_at(h)}" for h in policy.table]


def cmd_validate(args) -> int:
    cset = load_model(args.file)
    problems = check_compatibility(cset)
    _emit(args, {"ok": not problems, "violations": problems}, problems or ["OK"])
    return EXIT_INPUT if problems else EXIT_OK


def cmd_solve(args) -> int:
    cset = _load(args.file)
    weights = parse_weights(args.weights, cset.k)
    policy = solve_pareto(cset, weights)
    values = [policy_value(p, policy) for p in cset.players]
    mix = mixture_value(cset, weights, policy)
    names = [p.name for p in cset.players]
    doc = policy_to_dict(policy, {"values": dict(zip(names, values)), "mixture_value": mix})
    if args.out:
        _write_json(args.out, doc)
    width = max(len(n) for n in names + ["mixture"])
    lines = [f"{n:<{width}}  {fmt(v)}" for n, v in zip(names, values)]
    lines.append(f"{'mixture':<{width}}  {fmt(mix)}")
    if args.show_policy:
        lines += ["policy:"] + _policy_lines(policy)
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_frontier(args) -> int:
    if args.grid < 2:
        raise InputError(f"grid must be at least 2, got {args.grid}")
    cset = _load(args.file)
    points = sweep_frontier(cset, args.grid, workers=args.workers)
    entries, policies, lines = [], {}, []
    for i, pt in enumerate(points):
        pid = f"p{i}"
        entries.append({"weights": list(pt.weights.weights), "values": list(pt.values),
                        "policy_id": pid})
        policies[pid] = policy_to_dict(pt.policy)
        lines.append(f"{pid}  weights={fmt_vec(pt.weights)}  values={fmt_vec(pt.values)}")
    if args.out:
        out = Path(args.out)
        _write_json(out, entries)
        _write_json(out.with_name(out.stem + ".policies.json"), policies)
    _emit(args, entries, lines)
    return EXIT_OK


def _parse_history(text: str, cset):
    items = [t.strip() for t in text.split(",")] if text.strip() else []
    obs, acts = items[0::2], items[1::2]
    for o in obs:
        if o not in cset.observations:
            raise InputError(f"unknown observation label {o!r}")
    for a in acts:
        if a not in cset.actions:
            raise InputError(f"unknown action label {a!r}")
    return obs, acts


def cmd_trace(args) -> int:
    cset = _load(args.file)
    weights = parse_weights(args.weights, cset.k)
    obs, acts = _parse_history(args.history, cset)
    trace = priority_trace(cset, weights, obs, acts)
    rows, lines = [], []
    for st in trace:
        key = History(st.observations, st.actions[:max(len(st.observations) - 1, 0)]).key() \
            if st.observations else ""
        rows.append({"step": st.step, "history": key, "raw": list(st.raw),
                     "normalized": None if st.normalized is None else list(st.normalized)})
        norm = "impossible" if st.normalized is None else fmt_vec(st.normalized)
        lines.append(f"{st.step}  {key or '-':<20}  raw={fmt_vec(st.raw)}  normalized={norm}")
    _emit(args, rows, lines)
    return EXIT_OK


def cmd_naive(args) -> int:
    cset = _load(args.file)
    r = _number(args.r)
    policy = solve_naive(cset, r)
    values = [policy_value(p, policy) for p in cset.players]
    doc = policy_to_dict(policy, {"values": dict(zip([p.name for p in cset.players], values))})
    if args.out:
        _write_json(args.out, doc)
    lines = [f"r={fmt(r)}  values={fmt_vec(values)}", "policy:"] + _policy_lines(policy)
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_compare_naive(args) -> int:
    cset = _load(args.file)
    if cset.k != 2:
        raise ModelError(f"naive baseline defined for two players, got {cset.k}")
    grid = [_number(t) for t in args.grid.split(",")]
    if args.reference:
        reference = load_policy(args.reference)
    else:
        reference = solve_pareto(cset, (0.5, 0.5))
    report = compare_naive(cset, grid, reference)
    rows = [{"r": c.r, "values": list(c.values), "reference_values": list(c.reference_values),
             "verdict": c.verdict} for c in report]
    lines = [f"r={fmt(c.r):<12} values={fmt_vec(c.values):<16} "
             f"reference={fmt_vec(c.reference_values):<16} {c.verdict}" for c in report]
    _emit(args, rows, lines)
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    cset = _load(args.file)
    weights = parse_weights(args.weights, cset.k)
    best = brute_force_max(cset, weights, values=value_matrix(cset, args.cap))
    solved = mixture_value(cset, weights, solve_pareto(cset, weights))
    ok = abs(best.value - solved) <= 1e-9
    doc = {"oracle": best.value, "solver": solved, "pass": ok}
    _emit(args, doc, [f"oracle={fmt(best.value)}  solver={fmt(solved)}  {'PASS' if ok else 'FAIL'}"])
    return EXIT_OK if ok else 1


def cmd_show(args) -> int:
    print(json.dumps(dump_model(load_model(args.file)), indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="model file (JSON), or @name for a bundled example")
    common.add_argument("--json", action="store_true", help="structured output on stdout")

    parser = argparse.ArgumentParser(prog="pareto-pomdp",
                                     description="Exact Pareto optimal policies for players with differing beliefs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a model file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("solve", parents=[common], help="solve for given player weights")
    p.add_argument("--weights", required=True, help="comma-separated, e.g. 0.5,0.5")
    p.add_argument("--out", help="write the policy here")
    p.add_argument("--show-policy", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("frontier", parents=[common], help="sweep weights over a grid")
    p.add_argument("--grid", type=int, default=11)
    p.add_argument("--out", help="write frontier points here (policies to <stem>.policies.json)")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_frontier)

    p = sub.add_parser("trace", parents=[common], help="priority shifting along a history")
    p.add_argument("--weights", required=True)
    p.add_argument("--history", required=True, help='interleaved "o1,a1,o2,..."')
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("naive", parents=[common], help="fixed-weight baseline")
    p.add_argument("--r", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_naive)

    p = sub.add_parser("compare-naive", parents=[common], help="baseline vs reference policy")
    p.add_argument("--grid", default=DEFAULT_NAIVE_GRID, help="comma-separated r values")
    p.add_argument("--reference", help="policy file; default: equal-weight Pareto solution")
    p.set_defaults(func=cmd_compare_naive)

    p = sub.add_parser("oracle-check", parents=[common], help="compare solver with brute force")
    p.add_argument("--weights", required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("show", parents=[common], help="print a model in canonical form")
    p.set_defaults(func=cmd_show)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ModelFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ModelError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
