import json

import numpy as np
import pytest

from pareto_pomdp.files import (ModelFileError, bundled_model, dump_model, load_model,
                                load_policy, loads_model, policy_from_dict, policy_to_dict)
from pareto_pomdp.model import check_compatibility
from pareto_pomdp.probability import policy_value
from pareto_pomdp.random_models import random_compatible_set
from pareto_pomdp.solver import solve_pareto


def test_bundled_cake_is_valid(cake):
    assert check_compatibility(bundled_model("cake")) == []
    assert load_model("@cake").players[1].name == cake.players[1].name


def test_unknown_bundled_example():
    with pytest.raises(ModelFileError, match="pie"):
        load_model("@pie")


@pytest.mark.parametrize("seed", range(5))
def test_model_round_trip(seed, pi_hat):
    rng = np.random.default_rng(1900 + seed)
    cset = random_compatible_set(rng)
    again = loads_model(json.dumps(dump_model(cset)))
    assert dump_model(again) == dump_model(cset)
    policy = solve_pareto(cset, (0.4, 0.6))
    for a, b in zip(cset.players, again.players):
        assert policy_value(a, policy) == policy_value(b, policy)


@pytest.mark.parametrize("where", ["top", "player", "utility"])
def test_unknown_keys_rejected(cake, where):
    doc = dump_model(cake)
    target = {"top": doc, "player": doc["players"][0], "utility": doc["players"][0]["utility"]}[where]
    target["colour"] = 1
    with pytest.raises(ModelFileError, match="colour"):
        loads_model(json.dumps(doc))


def test_parse_error_has_position():
    with pytest.raises(ModelFileError, match=r"line 2, column"):
        loads_model('{"actions": [],\n  oops}')


def test_empty_file(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("")
    with pytest.raises(ModelFileError, match="line 1"):
        load_model(path)


def test_missing_file(tmp_path):
    with pytest.raises(ModelFileError, match="cannot read"):
        load_model(tmp_path / "absent.json")


def test_label_with_separator_rejected(cake):
    doc = dump_model(cake)
    doc["observations"] = ["red,ish", "green"]
    with pytest.raises(ModelFileError):
        loads_model(json.dumps(doc))


def test_policy_round_trip(tmp_path, cake):
    policy = solve_pareto(cake, (0.5, 0.5))
    path = tmp_path / "policy.json"
    path.write_text(json.dumps(policy_to_dict(policy, {"note": "x"})))
    loaded = load_policy(path)
    assert loaded.table == policy.table
    assert loaded.metadata["note"] == "x"
    assert loaded.metadata["route"] == "mixture"


def test_incomplete_policy_rejected(cake, pi_hat):
    doc = policy_to_dict(pi_hat)
    del doc["policy"]["green"]
    with pytest.raises(ModelFileError, match="incomplete"):
        policy_from_dict(doc)
