import json
import subprocess
import sys
from pathlib import Path

import pytest

from kcompact import cli
from kcompact.instance import SchemaError, builtin_names, load_instance

GOLDEN = Path(__file__).parent / "golden"


def run(argv, capsys):
    code = cli.run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_builtins_listed():
    assert {"wonderful_a1", "wonderful_a2", "quadrant_a1xa1", "a2"} <= set(builtin_names())


def test_weyl_a2(capsys):
    code, out, _ = run(["weyl", "--instance", "a2"], capsys)
    data = json.loads(out)
    assert code == 0 and data["order"] == 6
    assert data["c_set_sizes"] == {"empty": 1, "a1": 2, "a2": 2, "a1,a2": 1}


@pytest.mark.parametrize("name", sorted(p.stem.removeprefix("verify_all_") for p in GOLDEN.glob("verify_all_*.json")))
def test_verify_all_golden(name, capsys):
    code, out, _ = run(["verify-all", "--instance", name], capsys)
    assert code == 0
    assert out == (GOLDEN / f"verify_all_{name}.json").read_text()


def test_kring_flags(capsys):
    code, out, _ = run(["kring", "--instance", "wonderful_a1", "--table", "ordinary", "--verify", "oracle"], capsys)
    data = json.loads(out)
    assert code == 0
    assert "equivariant_table" not in data and data["ordinary_rank"]["rank"] == 4
    assert data["ordinary_table"]["s1|0*s1|0"] == {"s1|0": [-4, 4]}


def test_malformed_json(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, out, err = run(["verify-all", "--instance", str(p)], capsys)
    assert code == 2 and out == "" and json.loads(err)["error"] == "schema"


@pytest.mark.parametrize(
    "data",
    [
        {"fan": {"rays": [[1, 0]], "maximal_cones": [[0, 3]]}},
        {"root_system": {"type": "A2"}, "fan": {"rays": [[1]], "maximal_cones": [[0]]}},
        {"root_system": {"type": "A1"}, "psi": [0]},
        {"root_system": {"cartan": [[2, -5], [-1, 2]]}},
        {"name": "no data"},
    ],
)
def test_schema_errors(tmp_path, capsys, data):
    p = tmp_path / "x.json"
    p.write_text(json.dumps(data))
    code, _, err = run(["fan", "--instance", str(p)], capsys)
    assert code == 2, err
    with pytest.raises(SchemaError):
        inst = load_instance(data)
        inst.root_system


def test_verification_failure(tmp_path, capsys):
    p = tmp_path / "nu.json"
    p.write_text(json.dumps({"root_system": {"type": "A1xA1"}, "fan": {"rays": [[1, 0], [1, 2], [0, 1]], "maximal_cones": [[0, 1], [1, 2]]}}))
    code, out, _ = run(["fan", "--instance", str(p)], capsys)
    assert code == 1 and json.loads(out)["positive_subdivision"]["failures"][0]["determinant"] == 2
    code, out, err = run(["kring", "--instance", str(p)], capsys)
    assert code == 1 and json.loads(err)["error"] == "verification"


def test_not_ample(tmp_path, capsys):
    p = tmp_path / "q.json"
    data = json.loads(json.dumps(load_instance("quadrant_a1xa1").data))
    data["psi"] = [0, 0, 0]
    p.write_text(json.dumps(data))
    code, out, _ = run(["fan", "--instance", str(p)], capsys)
    assert code == 1 and not json.loads(out)["ample"]["ok"]


def test_internal_error(monkeypatch, capsys):
    def boom(*a, **k):
        raise ArithmeticError("inconsistent")

    monkeypatch.setattr(cli, "weyl_section", boom)
    code, _, err = run(["weyl", "--instance", "a2"], capsys)
    assert code == 3 and json.loads(err)["error"] == "internal"


def test_unknown_command(capsys):
    assert run(["frobnicate"], capsys)[0] == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "kcompact", "weyl", "--instance", "wonderful_a1"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["order"] == 2


def test_schema_document_is_current():
    from kcompact.instance import SCHEMA

    doc = Path(__file__).parent.parent / "docs" / "instance.schema.json"
    assert json.loads(doc.read_text()) == SCHEMA
