import json

import pytest

from gentoda.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_charpoly_classical(capsys):
    code, out, _ = run(capsys, "charpoly", "--n", "2", "--mode", "classical")
    assert code == 0
    doc = json.loads(out)
    assert sorted(doc["levels"]) == ["0", "1", "2"]


def test_charpoly_quantum_n1(capsys):
    code, out, _ = run(capsys, "charpoly", "--n", "1", "--mode", "quantum")
    assert code == 0
    assert json.loads(out)["mode"] == "quantum"


def test_charpoly_guardrail(capsys):
    code, _, err = run(capsys, "charpoly", "--n", "9")
    assert code == 2
    assert "guardrail" in err


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "quantum-commutativity", "--n", "2")
    assert code == 0
    assert json.loads(out)["status"] == "pass"


def test_verify_grading_n4(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "grading", "--n", "4")
    assert code == 0


def test_verify_failure_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "parabolic", "--n", "3")
    assert code == 1
    assert json.loads(out)["status"] == "fail"


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--suite", "bogus"])
    assert info.value.code == 2


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "--n", "2")
    assert code == 0
    doc = json.loads(out)
    assert sorted(doc["levels"]) == ["0", "1", "2"]
    assert doc["levels"]["1"]["character"] == {"E11": "-1/1", "E21": "0/1", "E22": "1/1"}
    code, out, _ = run(capsys, "reduce", "--n", "1")
    assert code == 0


def test_reduce_n3_characters_match(capsys):
    from gentoda import aks, serialize

    code, out, _ = run(capsys, "reduce", "--n", "3")
    doc = json.loads(out)
    for k, chi in aks.characters(3, "quantum").items():
        assert doc["levels"][str(k)]["character"] == serialize.character_to_json(chi)


def test_simulate_open(capsys, tmp_path):
    trace = tmp_path / "t.csv"
    code, out, _ = run(capsys, "simulate", "--model", "open", "--n", "3", "--dt", "1e-3", "--t-end", "1", "--trace", str(trace))
    assert code == 0
    doc = json.loads(out)
    assert doc["drift"]["max_drift_overall"] < 1e-8
    assert trace.read_text().startswith("t,q1")


def test_simulate_kk(capsys):
    code, out, _ = run(capsys, "simulate", "--model", "kk", "--n", "3", "--hamiltonian", "delta:0,1", "--t-end", "0.5")
    assert code == 0
    doc = json.loads(out)
    assert "delta_1_1" in doc["drift"]["max_drift"]
    assert max(doc["root_drift"].values()) < 1e-8


def test_simulate_bad_dt():
    with pytest.raises(SystemExit) as info:
        main(["simulate", "--dt", "0"])
    assert info.value.code == 2


def test_simulate_bad_hamiltonian(capsys):
    code, _, err = run(capsys, "simulate", "--model", "kk", "--hamiltonian", "delta:7,0")
    assert code == 2


def test_simulate_init_file(capsys, tmp_path):
    init = tmp_path / "init.json"
    init.write_text(json.dumps({"q": [0, 0, 0], "p": [0.1, 0, -0.1]}))
    code, out, _ = run(capsys, "simulate", "--init", str(init), "--t-end", "0.1")
    assert code == 0
    assert json.loads(out)["initial_state"] == [0, 0, 0, 0.1, 0, -0.1]


@pytest.mark.parametrize("spread", [700, 800])
def test_simulate_blowup_exit(capsys, tmp_path, spread):
    init = tmp_path / "init.json"
    init.write_text(json.dumps({"q": [spread, 0, -spread], "p": [0, 0, 0]}))
    code, _, err = run(capsys, "simulate", "--init", str(init), "--t-end", "1")
    assert code == 1
    assert "last good time" in err


def test_out_dir_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("GENTODA_OUT_DIR", str(tmp_path))
    code, out, _ = run(capsys, "charpoly", "--n", "2")
    assert code == 0 and out == ""
    first = (tmp_path / "charpoly_n2_classical.json").read_bytes()
    run(capsys, "charpoly", "--n", "2")
    assert (tmp_path / "charpoly_n2_classical.json").read_bytes() == first
