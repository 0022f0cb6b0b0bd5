"""JSON model files and policy documents.

Model file layout::

    {"actions": [...], "observations": [...], "horizon": n,
     "players": [{"name": ..., "states": [...],
                  "initial": {state: p},
                  "transition": {"state|action": {state: p}},
                  "observation": {state: {obs: p}},
                  "utility": {"kind": "additive", "values": {state: u}}
                          or {"kind": "tabular", "table": {"s1,s2,...": u}}}]}

Unknown keys are rejected. Structural problems raise ``ModelFileError``;
probability-level problems are left for ``check_compatibility`` to report.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .model import ActionSet, CompatibleSet, ModelError, ObservationSet, PlayerOutlook, UtilitySpec
from .policy import History, Policy

TOP_KEYS = {"actions", "observations", "horizon", "players"}
PLAYER_KEYS = {"name", "states", "initial", "transition", "observation", "utility"}
UTILITY_KEYS = {"kind", "values", "table"}


class ModelFileError(Exception):
    """The document cannot be read or does not have the model-file shape."""


def _reject_unknown(obj: dict, allowed: set, where: str) -> None:
    for key in obj:
        if key not in allowed:
            raise ModelFileError(f"unknown key {key!r} in {where}")


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise ModelFileError(message)


def _labels(value, where: str) -> tuple:
    _expect(isinstance(value, list) and all(isinstance(x, str) for x in value),
            f"{where} must be an array of strings")
    for x in value:
        _expect("," not in x and "|" not in x, f"{where} label {x!r} may not contain ',' or '|'")
    return tuple(value)


def _vector(value, where: str) -> dict:
    _expect(isinstance(value, dict), f"{where} must be an object")
    for k, v in value.items():
        _expect(isinstance(v, (int, float)) and not isinstance(v, bool),
                f"{where}[{k!r}] must be a number")
    return dict(value)


def _player(raw, index: int, actions, observations, horizon) -> PlayerOutlook:
    where = f"players[{index}]"
    _expect(isinstance(raw, dict), f"{where} must be an object")
    _reject_unknown(raw, PLAYER_KEYS, where)
    for key in PLAYER_KEYS:
        _expect(key in raw, f"{where} is missing key {key!r}")
    _expect(isinstance(raw["name"], str), f"{where}.name must be a string")
    states = _labels(raw["states"], f"{where}.states")

    _expect(isinstance(raw["transition"], dict), f"{where}.transition must be an object")
    transition = {}
    for key, row in raw["transition"].items():
        parts = key.split("|")
        _expect(len(parts) == 2, f"{where}.transition key {key!r} must look like 'state|action'")
        transition[(parts[0], parts[1])] = _vector(row, f"{where}.transition[{key!r}]")

    _expect(isinstance(raw["observation"], dict), f"{where}.observation must be an object")
    observation = {s: _vector(row, f"{where}.observation[{s!r}]")
                   for s, row in raw["observation"].items()}

    util = raw["utility"]
    _expect(isinstance(util, dict), f"{where}.utility must be an object")
    _reject_unknown(util, UTILITY_KEYS, f"{where}.utility")
    kind = util.get("kind")
    if kind == "additive":
        _expect("values" in util and "table" not in util,
                f"{where}.utility of kind additive needs 'values' only")
        utility = UtilitySpec.additive(_vector(util["values"], f"{where}.utility.values"))
    elif kind == "tabular":
        _expect("table" in util and "values" not in util,
                f"{where}.utility of kind tabular needs 'table' only")
        table = _vector(util["table"], f"{where}.utility.table")
        utility = UtilitySpec.tabular({tuple(k.split(",")): v for k, v in table.items()})
    else:
        raise ModelFileError(f"{where}.utility.kind must be 'additive' or 'tabular', got {kind!r}")

    return PlayerOutlook(raw["name"], states, _vector(raw["initial"], f"{where}.initial"),
                         transition, observation, utility, actions, observations, horizon)


def parse_model(doc) -> CompatibleSet:
    _expect(isinstance(doc, dict), "model document must be a JSON object")
    _reject_unknown(doc, TOP_KEYS, "model")
    for key in TOP_KEYS:
        _expect(key in doc, f"model is missing key {key!r}")
    horizon = doc["horizon"]
    _expect(isinstance(horizon, int) and not isinstance(horizon, bool), "horizon must be an integer")
    _expect(isinstance(doc["players"], list), "players must be an array")
    try:
        actions = ActionSet(_labels(doc["actions"], "actions"))
        observations = ObservationSet(_labels(doc["observations"], "observations"))
    except ModelError as exc:
        raise ModelFileError(str(exc)) from None
    players = tuple(_player(p, i, actions.labels, observations.labels, horizon)
                    for i, p in enumerate(doc["players"]))
    return CompatibleSet(actions, observations, horizon, players)


def loads_model(text: str) -> CompatibleSet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_model(doc)


def load_model(path) -> CompatibleSet:
    path = str(path)
    if path.startswith("@"):
        return loads_model(bundled_text(path[1:]))
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ModelFileError(f"cannot read {path}: {exc}") from None
    try:
        return loads_model(text)
    except ModelFileError as exc:
        raise ModelFileError(f"{path}: {exc}") from None


def bundled_text(name: str) -> str:
    """Text of a bundled example model, e.g. ``cake``."""
    name = name.removesuffix(".json")
    ref = resources.files("pareto_pomdp") / "examples" / f"{name}.json"
    if not ref.is_file():
        raise ModelFileError(f"no bundled example named {name!r}")
    return ref.read_text(encoding="utf-8")


def bundled_model(name: str) -> CompatibleSet:
    return loads_model(bundled_text(name))


def dump_model(cset: CompatibleSet) -> dict:
    players = []
    for p in cset.players:
        if p.utility.kind == "additive":
            utility = {"kind": "additive", "values": dict(p.utility.values)}
        else:
            utility = {"kind": "tabular",
                       "table": {",".join(k): v for k, v in p.utility.table.items()}}
        players.append({
            "name": p.name,
            "states": list(p.states),
            "initial": dict(p.initial),
            "transition": {f"{s}|{a}": dict(row) for (s, a), row in p.transition.items()},
            "observation": {s: dict(row) for s, row in p.observation.items()},
            "utility": utility,
        })
    return {"actions": list(cset.actions), "observations": list(cset.observations),
            "horizon": cset.horizon, "players": players}


def policy_to_dict(policy: Policy, extra_metadata: dict | None = None) -> dict:
    metadata = dict(policy.metadata)
    metadata.update(extra_metadata or {})
    return {
        "metadata": metadata,
        "actions": list(policy.actions),
        "observations": list(policy.observations),
        "horizon": policy.horizon,
        "policy": {h.key(): dict(dist) for h, dist in policy.table.items()},
    }


def policy_from_dict(doc) -> Policy:
    try:
        actions = tuple(doc["actions"])
        observations = tuple(doc["observations"])
        horizon = int(doc["horizon"])
        table = {History.from_interleaved(key.split(",")): {a: float(p) for a, p in dist.items()}
                 for key, dist in doc["policy"].items()}
    except (KeyError, TypeError, ValueError, AttributeError, ModelError) as exc:
        raise ModelFileError(f"malformed policy document: {exc}") from None
    policy = Policy(actions, observations, horizon, table, dict(doc.get("metadata", {})))
    problems = policy.problems()
    if problems:
        raise ModelFileError("policy is incomplete: " + "; ".join(problems[:5]))
    return policy


def load_policy(path) -> Policy:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError) as exc:
        raise ModelFileError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return policy_from_dict(doc)
