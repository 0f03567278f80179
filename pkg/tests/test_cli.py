from __future__ import annotations

import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from orbitcone.cli import InputError, RunRequest, main, run
from orbitcone.examples import EXAMPLES, get_example, sl2_group_divisor_vectors
from orbitcone.polycore.rational import fmt_vec
from orbitcone.spherical import moment_polytope, orbit_space_model

GOLDEN = Path(__file__).parent / "golden" / "v1"


def _run(**kw) -> tuple[int, dict]:
    code, text = run(RunRequest(**kw))
    return code, json.loads(text)


# -- exit codes ----------------------------------------------------------------------

@pytest.mark.parametrize("command, example", [
    ("valcone", "sl2cubed"), ("polytope", "toy-triangle"), ("orbit-space", "sl2cubed"),
    ("stratify", "sl2cubed"), ("verify-fan", "sl2cubed"), ("verify-fan", "toy-triangle"),
    ("kempf-ness", "toric-square"),
])
def test_success(command, example):
    code, out = _run(command=command, example_name=example)
    assert code == 0 and out["exit_code"] == 0
    assert out["datum_hash"] == get_example(example).datum.digest()


def test_incomplete_fan_is_a_verification_failure(tmp_path):
    path = tmp_path / "tri.json"
    path.write_text(json.dumps(get_example("toy-triangle").datum.to_json()))
    code, out = _run(command="orbit-space", input_path=str(path))
    assert code == 2 and "IncompleteFan" in out["error"]
    code, _ = _run(command="orbit-space", input_path=str(path), allow_incomplete=True)
    assert code == 0


def test_stratify_without_root_system_is_input_error():
    code, out = _run(command="stratify", example_name="toy-wedge")
    assert code == 1 and "MissingRootSystem" in out["error"]


def test_request_validation():
    with pytest.raises(InputError):
        RunRequest(command="valcone")
    with pytest.raises(InputError):
        RunRequest(command="bogus", example_name="flag")


def test_invert_moment_sign_convention():
    code, out = _run(command="invert-moment", example_name="toric-segment", mu="-1/2")
    assert code == 0 and out["xi"] == [0.0]
    assert out["mu_minus_pol"] == ["1/2"]


def test_invert_moment_boundary_is_input_error():
    code, out = _run(command="invert-moment", example_name="toric-segment", mu="-1")
    assert code == 1 and "BoundaryPoint" in out["error"]


def test_verify_fan_failure_exit_two(tmp_path):
    data = get_example("toy-triangle").datum.to_json()
    data["spherical_roots"] = [[-1, -1]]  # Val no longer contains the stable ray
    data["divisors"][2]["g_stable"] = False
    data["divisors"].append({"label": "S", "v": [1, 1], "m": 5, "g_stable": True})
    data["fan"] = [[[1, 1]]]
    path = tmp_path / "d.json"
    path.write_text(json.dumps(data))
    code, out = _run(command="verify-fan", input_path=str(path))
    assert code == 2 and out["ok"] is False


# -- schema errors -------------------------------------------------------------------

def test_schema_errors_carry_json_pointers(tmp_path):
    data = get_example("toy-triangle").datum.to_json()
    data["divisors"][1]["m"] = -1
    data["extra"] = True
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, out = _run(command="valcone", input_path=str(path))
    assert code == 1
    assert "/divisors/1/m" in out["error"]
    assert "extra" in out["error"]


def test_semantic_error_is_input_error(tmp_path):
    data = {"rank": 2, "spherical_roots": [[1, 1], [2, 2]], "kappa": [0, 0], "divisors": []}
    path = tmp_path / "dep.json"
    path.write_text(json.dumps(data))
    code, out = _run(command="valcone", input_path=str(path))
    assert code == 1 and "independent" in out["error"]


def test_unreadable_input():
    code, _ = _run(command="valcone", input_path="/nonexistent/x.json")
    assert code == 1


def test_cartan_matrix_input(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"matrix": [[2, 0], [0, 0.5]]}))
    code, out = _run(command="cartan", input_path=str(path))
    assert code == 0 and out["residual"] <= 1e-12
    path.write_text(json.dumps({"matrix": [[2, 0], [0, 2]]}))
    assert _run(command="cartan", input_path=str(path))[0] == 1


# -- output formats and determinism --------------------------------------------------

def test_csv_output():
    code, text = run(RunRequest(command="stratify", example_name="sl2-group", output_format="csv"))
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and len(rows) == 2


def test_sample_orbits_report():
    code, out = _run(command="sample-orbits", count=30)
    assert code == 0
    assert out["stratum_count"] == 3 and out["valuation_cone_faces"] == 8


@pytest.mark.parametrize("argv", [
    ["orbit-space", "--example", "sl2cubed"],
    ["sample-orbits", "--seed", "3", "--count", "12", "--format", "csv"],
    ["cartan", "--size", "3", "--seed", "7"],
])
def test_byte_identical_reruns(argv, capsys):
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_negative_mu_argument_parses(capsys):
    assert main(["invert-moment", "--example", "toric-square", "--mu", "-1/4,-3/4"]) == 0
    assert json.loads(capsys.readouterr().out)["exit_code"] == 0


def test_out_flag_writes_file(tmp_path):
    target = tmp_path / "r.json"
    assert main(["valcone", "--example", "flag", "--out", str(target)]) == 0
    assert json.loads(target.read_text())["command"] == "valcone"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "orbitcone", "valcone", "--example", "flag"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["tool"] == "orbitcone"


# -- golden files --------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_golden_files_match_live_pipeline(name):
    gold = json.loads((GOLDEN / f"{name}.json").read_text())
    ex = get_example(name)
    pol = moment_polytope(ex.datum)
    model = orbit_space_model(ex.datum, ex.fan, require_complete=ex.require_complete)
    assert gold["datum"] == ex.datum.to_json()
    assert gold["vertices"] == [fmt_vec(v) for v in pol.vertices]
    assert gold["face_count"] == len(pol.faces)
    assert gold["removed_active_sets"] == [sorted(f.active) for f in model.removed_faces]
    if name == "sl2-group":
        assert gold["oracle_divisor_vectors"] == sl2_group_divisor_vectors()
