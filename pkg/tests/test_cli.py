import json

import pytest

from csaforge.cli import main

NORM_ALGEBRA = {"q": 27, "sigma": {"frob": 1, "moebius": [[1, 0], [0, 1]]}, "n": 3, "lambda": "2"}
DIVISION = {"algebra": {"q": 3, "sigma": {"frob": 0, "moebius": [[2, 0], [0, 1]]}, "n": 2,
                        "lambda": "t^2"},
            "construction": {"type": "ideal", "z": "(t) + (1)*x"}}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_quaternion(tmp_path, capsys):
    out = tmp_path / "q.txt"
    code, _, _ = run(capsys, "build-quaternion", "--q", "3", "--places", "finite:t,finite:t+1",
                     "--seed", "7", "--out", str(out))
    assert code == 0
    text = out.read_text()
    assert "ram = {t, t+1}" in text
    assert text.startswith("# build-quaternion seed=7")
    code, stdout, _ = run(capsys, "verify", "--in", str(out))
    assert code == 0 and stdout.strip() == "ram = {t, t+1}"


def test_build_quaternion_is_deterministic(capsys):
    args = ["build-quaternion", "--q", "5", "--places", "finite:t,inf", "--seed", "3"]
    a = run(capsys, *args)
    b = run(capsys, *args)
    assert a == b and a[0] == 0


def test_odd_place_set_exits_2(capsys):
    code, _, err = run(capsys, "build-quaternion", "--q", "3", "--places", "finite:t", "--seed", "7")
    assert code == 2 and "even" in err


def test_bad_arguments_exit_2(capsys):
    assert run(capsys, "build-quaternion", "--q", "6", "--places", "")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2
    assert run(capsys, "verify", "--in", "{not json")[0] == 2


def test_build_symbol_and_verify(tmp_path, capsys):
    job = {"q": 13, "n": 3, "invariants": [{"place": "finite:t", "inv": "1/3"},
                                          {"place": "finite:t+1", "inv": "1/3"}],
           "infinity": "1/3", "seed": 123}
    out = tmp_path / "s.json"
    assert run(capsys, "build-symbol", "--in", json.dumps(job), "--out", str(out))[0] == 0
    d = json.loads(out.read_text())
    assert d["profile"] == ["finite:t → 1/3", "finite:t+1 → 1/3", "inf → 1/3"]
    assert {"a", "b", "epsilon"} <= set(d)
    code, stdout, _ = run(capsys, "verify", "--in", str(out))
    assert code == 0 and stdout.splitlines() == d["profile"]


def test_verify_broken_reciprocity_exits_4(tmp_path, capsys):
    job = {"q": 13, "n": 3, "invariants": [{"place": "finite:t", "inv": "1/3"}], "infinity": "2/3"}
    out = tmp_path / "s.json"
    assert run(capsys, "build-symbol", "--in", json.dumps(job), "--out", str(out))[0] == 0
    d = json.loads(out.read_text())
    d["profile"] = ["finite:t → 1/3", "inf → 1/3"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(d))
    code, _, err = run(capsys, "verify", "--in", str(bad))
    assert code == 4 and "reciprocity" in err


def test_build_symbol_bad_spec_exits_2(capsys):
    job = {"q": 13, "n": 3, "invariants": [{"place": "finite:t", "inv": "1/3"}], "infinity": "0"}
    assert run(capsys, "build-symbol", "--in", json.dumps(job))[0] == 2


def test_code_roundtrip(tmp_path, capsys):
    code_path = tmp_path / "code.json"
    assert run(capsys, "code-new", "--in", json.dumps(NORM_ALGEBRA), "--delta", "3",
               "--out", str(code_path))[0] == 0
    desc = json.loads(code_path.read_text())
    assert desc["dim"] == 1 and desc["delta"] == 3
    code, stdout, _ = run(capsys, "encode", "--in", str(code_path), "--msg", '["t+1"]')
    assert code == 0
    word = json.loads(stdout)["codeword"]
    word[1] = word[1] + "+t^2" if word[1] != "0" else "t^2"
    code, stdout, _ = run(capsys, "decode", "--in", str(code_path), "--word", json.dumps(word))
    assert code == 0
    assert json.loads(stdout)["message"] == ["t+1"]
    code, stdout, _ = run(capsys, "mindist", "--in", str(code_path))
    assert code == 0 and stdout.strip() == "3"


def test_decode_failure_exits_3(tmp_path, capsys):
    code_path = tmp_path / "code.json"
    run(capsys, "code-new", "--in", json.dumps(NORM_ALGEBRA), "--delta", "3", "--out", str(code_path))
    codes = set()
    for word in (["1", "t", "0"], ["t", "1", "t^2"], ["0", "1", "1"]):
        codes.add(run(capsys, "decode", "--in", str(code_path), "--word", json.dumps(word))[0])
    assert codes <= {0, 3} and 3 in codes


def test_mindist_division_fixture(tmp_path, capsys):
    code_path = tmp_path / "div.json"
    assert run(capsys, "code-new", "--in", json.dumps(DIVISION), "--out", str(code_path))[0] == 0
    code, stdout, _ = run(capsys, "mindist", "--in", str(code_path))
    assert code == 0 and stdout.strip() == "1"


def test_simulate_csv(tmp_path, capsys):
    code_path = tmp_path / "code.json"
    run(capsys, "code-new", "--in", json.dumps(NORM_ALGEBRA), "--delta", "3", "--out", str(code_path))
    code, stdout, _ = run(capsys, "simulate", "--in", str(code_path), "--trials", "4", "--seed", "2")
    assert code == 0
    lines = stdout.splitlines()
    assert lines[0] == "trial,seed,n,delta,errors_injected,decoded_ok"
    assert len(lines) == 5 and all(l.endswith(",1") for l in lines[1:])
    assert run(capsys, "simulate", "--in", str(code_path), "--trials", "4", "--seed", "2")[1] == stdout


def test_tampered_generator_exits_4(tmp_path, capsys):
    code_path = tmp_path / "code.json"
    run(capsys, "code-new", "--in", json.dumps(NORM_ALGEBRA), "--delta", "2", "--out", str(code_path))
    d = json.loads(code_path.read_text())
    d["generator"] = "(1) + (1)*x"
    assert run(capsys, "mindist", "--in", json.dumps(d))[0] == 4


@pytest.mark.parametrize("construction,delta", [
    ({"type": "split", "mu": "6*t"}, 3),
])
def test_split_construction(construction, delta, capsys):
    job = {"algebra": {"q": 7, "sigma": {"frob": 0, "moebius": [[2, 0], [0, 1]]}, "n": 3,
                       "lambda": "-t^3"}, "construction": construction, "delta": delta}
    code, stdout, _ = run(capsys, "code-new", "--in", json.dumps(job))
    assert code == 0
    code, stdout, _ = run(capsys, "mindist", "--in", stdout)
    assert code == 0 and int(stdout) >= delta
