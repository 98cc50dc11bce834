import json
from pathlib import Path

import pytest

from germtools.cli import dumps, main

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
JOBS = json.loads((CORPUS / "jobs.json").read_text())


def run(tmp_path, command, src, *extra):
    out = tmp_path / f"{Path(src).stem}.{command}.out.json"
    code = main([command, "--input", str(src), "--output", str(out), *extra])
    return code, out


@pytest.mark.parametrize("name", sorted(JOBS))
def test_corpus_exit_codes(tmp_path, name):
    job = JOBS[name]
    code, out = run(tmp_path, job["command"], CORPUS / name)
    assert code == job["exit"]
    if code == 0:
        obj = json.loads(out.read_text())
        assert obj["kind"] == job["command"]
        assert out.read_text() == dumps(obj)


def test_math_failure_writes_error_object(tmp_path):
    code, out = run(tmp_path, "eisenstein", CORPUS / "eis_bad.json")
    assert code == 2
    err = json.loads(out.read_text())["error"]
    assert err["kind"] == "DivisibilityFailure" and err["detail"]


def test_roundtrip_and_verify(tmp_path):
    code, out = run(tmp_path, "tower-set", CORPUS / "cusp.json")
    assert code == 0
    assert run(tmp_path, "roundtrip", out)[0] == 0
    code, rep = run(tmp_path, "verify", out)
    assert code == 0 and json.loads(rep.read_text())["report"]["ok"]


def test_roundtrip_detects_noncanonical_text(tmp_path):
    code, out = run(tmp_path, "descent", CORPUS / "descent_sqrt2.json")
    obj = json.loads(out.read_text())
    shuffled = tmp_path / "shuffled.json"
    shuffled.write_text(json.dumps(dict(reversed(list(obj.items())))))
    assert run(tmp_path, "roundtrip", shuffled)[0] == 3


def test_empty_and_malformed_inputs(tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text("")
    assert run(tmp_path, "prepare", empty)[0] == 1
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run(tmp_path, "disc", broken)[0] == 1
    assert run(tmp_path, "prepare", tmp_path / "missing.json")[0] == 1
    assert main(["prepare", "--input", str(CORPUS / "prepare_unit.json"), "--trunc", "0"]) == 1


def test_options_override_input(tmp_path):
    code, out = run(tmp_path, "eisenstein", CORPUS / "eis_sqrt.json", "--out-degree", "4",
                    "--check-degree", "3")
    obj = json.loads(out.read_text())
    assert code == 0 and obj["out_degree"] == 4 and obj["verify"]["checked_to"] == 3
