# coding=utf-8
# Copyright 2024 The omcodes Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json

import pytest

from omcodes.catalog import instance_names, sunflower_code
from omcodes.cli import UsageError, main, parse_args, run


@pytest.fixture
def write_json(tmp_path):
    def write(document, name="input.json"):
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return str(path)

    return write


def test_catalog_list():
    result = run(["catalog", "list"])
    assert result.status == "ok"
    assert result.exit_code == 0
    assert result.payload == {"instances": instance_names()}


def test_matroid_code_by_name():
    assert run(["code", "matroid", "--name", "M1"]).payload == {"n": 3, "codewords": [[1], [2], [1, 3], [2, 3]]}
    signed = run(["code", "matroid", "--name", "M1", "--mode", "Lpm"]).payload
    assert signed["n"] == 6
    assert len(signed["codewords"]) == 9


def test_convert_topes_and_flags():
    assert run(["convert", "topes", "--name", "M1"]).payload == {"n": 3, "topes": ["+-+", "+--", "-++", "-+-"]}
    assert run(["convert", "flags", "--name", "generic3"]).payload["uniform"] is True
    assert run(["convert", "circuits", "--name", "M1"]).payload == {"n": 3, "circuits": ["++0", "--0"]}


def test_convert_from_circuits_and_minor(write_json):
    path = write_json({"n": 3, "circuits": ["++0", "--0"]})
    assert len(run(["convert", "covectors", "--file", path]).payload["covectors"]) == 9
    path = write_json({"d": 2, "forms": [[1, 0], [-1, 0], [0, 1]], "contract": [1, 2]})
    assert run(["convert", "minor", "--file", path]).payload == {"n": 1, "covectors": ["+", "-", "0"]}


def test_validate_reports_violations(write_json):
    path = write_json({"n": 2, "covectors": ["00", "+0"]})
    result = run(["validate", "covectors", "--file", path])
    assert result.status == "ok"
    assert result.payload == {"valid": False, "violations": [{"axiom": "V2", "witness": ["+0"]}]}


def test_affine_ideal_from_forms(write_json):
    path = write_json({"d": 1, "forms": [[1], [1], [1]], "g": 3})
    assert run(["ideal", "affine", "--file", path]).payload == {"n": 3, "x": [[1, 2]], "y": [[]]}


def test_affine_ideal_needs_g():
    result = run(["ideal", "affine", "--name", "rank1_3"])
    assert result.status == "invalid-input"
    assert result.exit_code == 1


def test_ideal_quotient(write_json):
    document = {
        "J1": {"n": 3, "x": [[1, 2, 3], []], "y": [[], [1, 2, 3]]},
        "J2": {"n": 3, "x": [[1, 2], []], "y": [[], [1, 2]]},
        "specialize": 3,
    }
    assert run(["ideal", "quotient", "--file", write_json(document)]).payload == {"n": 3, "x": [[1, 2]], "y": [[]]}


def test_canonical_form_and_weak_elimination(write_json):
    path = write_json({"n": 3, "codewords": [[], [1], [2], [3], [1, 2, 3]]})
    assert len(run(["ideal", "canonical", "--file", path]).payload["pos"]) == 3
    payload = run(["ideal", "weak-elimination", "--file", path]).payload
    assert payload == {"holds": True, "incomparability": False, "witness": None}


def test_commuting_square_by_name():
    assert run(["ideal", "commuting-square", "--name", "generic3"]).payload["holds"] is True


def test_morphisms():
    assert run(["morphism", "apply", "--name", "fig3_morphism"]).payload == {
        "n": 2,
        "codewords": [[], [1], [2], [1, 2]],
    }


def test_morphism_check(write_json):
    document = {
        "source": {"n": 2, "codewords": [[], [1], [2], [1, 2]]},
        "target": {"n": 1, "codewords": [[], [1]]},
        "map": [[[], []], [[1], []], [[2], []], [[1, 2], [1]]],
    }
    assert run(["morphism", "check", "--file", write_json(document)]).payload == {"morphism": True}


def test_obstructions(write_json):
    path = write_json({"n": 3, "codewords": [[], [1, 2], [1, 3], [2, 3]]})
    assert run(["topology", "obstructions", "--file", path]).payload["obstructions"] == 3
    assert run(["topology", "homology", "--file", path]).payload == {"ranks": {"-1": 0, "0": 0, "1": 1}}


def test_leq_budget_status(write_json):
    document = {"D": {"n": 2, "codewords": [[], [1], [2], [1, 2]]}, "C": {"n": 1, "codewords": [[], [1]]}}
    path = write_json(document)
    assert run(["leq", "--file", path]).payload == {"status": "no-exhausted", "nodes": 9}
    result = run(["leq", "--file", path, "--budget", "1"])
    assert result.status == "budget"
    assert result.exit_code == 2


def test_leq_on_a_large_code_is_ok(write_json):
    state = sunflower_code(3).state_dict()
    result = run(["leq", "--file", write_json({"D": state, "C": state})])
    assert result.status == "ok"
    assert result.payload == {"status": "yes", "nodes": 1, "kind": "trunk", "witness": [[]]}


def test_capacity_status(write_json):
    path = write_json({"n": 17, "codewords": [[]]})
    result = run(["ideal", "canonical", "--file", path])
    assert result.status == "capacity"
    assert result.exit_code == 2
    assert json.loads(result.to_json())["status"] == "capacity"


def test_invalid_inputs(tmp_path, write_json):
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    assert run(["code", "canonical", "--file", str(broken)]).status == "invalid-input"
    assert run(["code", "canonical", "--file", str(tmp_path / "missing.json")]).status == "invalid-input"
    assert run(["code", "canonical", "--name", "nothing"]).status == "invalid-input"
    path = write_json({"n": 2, "codewords": [[3]]})
    assert run(["code", "canonical", "--file", path]).status == "invalid-input"


@pytest.mark.parametrize(
    "argv",
    (
        ["nope"],
        ["code"],
        ["code", "matroid"],
        ["code", "matroid", "--name", "M1", "--file", "x.json"],
        ["code", "matroid", "--name", "M1", "--mode", "W-"],
        ["catalog", "show"],
    ),
)
def test_usage_errors(argv):
    with pytest.raises(UsageError):
        run(argv)


def test_main_prints_compact_json(capsys):
    with pytest.raises(SystemExit) as info:
        main(["catalog", "sunflower", "--n", "3"])
    assert info.value.code == 0
    output = capsys.readouterr().out.strip()
    assert " " not in output
    assert len(json.loads(output)["codewords"]) == 16


def test_main_usage_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["nope"])
    assert info.value.code == 64
    assert "usage" in capsys.readouterr().err


def test_output_does_not_depend_on_jobs():
    serial = run(["convert", "covectors", "--name", "generic3", "--jobs", "1"]).to_json()
    assert run(["convert", "covectors", "--name", "generic3", "--jobs", "2"]).to_json() == serial
    assert run(["convert", "covectors", "--name", "generic3"]).to_json() == serial


def test_jobs_default_from_environment(monkeypatch):
    monkeypatch.setenv("OMCODES_JOBS", "3")
    assert parse_args(["catalog", "list"]).jobs == 3


def test_battery_command():
    payload = run(["catalog", "battery", "--kind", "random-codes", "--n", "3", "--size", "4", "--seed", "2"]).payload
    assert [instance["name"] for instance in payload["instances"]] == [f"random-codes-2-{i}" for i in range(4)]
