import json

import pytest

from sjlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_k3(tmp_path, capsys):
    path = tmp_path / "k3.json"
    code, _, _ = run(capsys, "build", "k3", "--field", "Q", "--out", str(path))
    assert code == 0
    d = json.loads(path.read_text())
    assert d["dim"] == 3 and d["parity"] == [0, 1, 1] and d["field"] == "Q"
    assert (tmp_path / "k3.idem.json").is_file()


def test_build_jgamma_and_errors(capsys):
    code, out, _ = run(capsys, "build", "jgamma:n=2")
    assert code == 0 and json.loads(out)["dim"] == 8
    code, _, err = run(capsys, "build", "d_t:t=0")
    assert code == 2 and "t != 0" in err
    with pytest.raises(SystemExit) as e:
        main(["solve", "--algebra", "k3", "--kind", "bogus"])
    assert e.value.code == 2


def test_solve_examples(capsys):
    code, out, _ = run(capsys, "solve", "--algebra", "k3", "--kind", "tder", "--parity", "1")
    rep = json.loads(out)
    assert code == 0 and rep["dim"] == 2 and rep["standard"] == {"all_standard": True, "witness": None}
    assert set(rep) >= {"algebra", "field", "kind", "parity", "dim", "basis", "standard"}
    _, out, _ = run(capsys, "solve", "--algebra", "k3", "--kind", "centroid", "--parity", "1")
    assert json.loads(out)["dim"] == 0
    _, out, _ = run(capsys, "solve", "--algebra", "jvf:p=0,q=4", "--kind", "gder", "--parity", "1")
    assert json.loads(out)["dim"] == 0
    _, out, _ = run(capsys, "solve", "--algebra", "jvf:p=0,q=2", "--kind", "gder", "--parity", "1")
    rep = json.loads(out)
    assert rep["standard"] == {"all_standard": False, "witness": 0}
    code, _, _ = run(capsys, "solve", "--algebra", "k3", "--kind", "gder5")
    assert code == 2


def test_solve_structure_kinds(capsys):
    _, out, _ = run(capsys, "solve", "--algebra", "d_t:t=2", "--kind", "peirce")
    assert json.loads(out)["peirce"]["dims"] == {"11": 1, "12": 2, "22": 1}
    _, out, _ = run(capsys, "solve", "--algebra", "k3", "--kind", "nucleus")
    assert json.loads(out)["nucleus_dim"] == 0
    _, out, _ = run(capsys, "solve", "--algebra", "mat:m=1,n=1", "--kind", "center")
    assert json.loads(out)["center_dim"] == 1
    _, out, _ = run(capsys, "solve", "--algebra", "mat:m=1,n=1", "--kind", "delta", "--delta", "1/2")
    assert json.loads(out)["delta"] == "1/2"
    code, _, _ = run(capsys, "solve", "--algebra", "k3", "--kind", "delta")
    assert code == 2


def test_round_trip_matches_in_memory(tmp_path, capsys):
    for spec, field in (("hull[k3]", "Q"), ("d_t:t=2", "F5")):
        path = tmp_path / "a.json"
        run(capsys, "build", spec, "--field", field, "--out", str(path))
        for kind in ("tder", "gder", "peirce"):
            _, from_file, _ = run(capsys, "solve", "--algebra", str(path), "--kind", kind, "--parity", "1")
            _, direct, _ = run(capsys, "solve", "--algebra", spec, "--field", field, "--kind", kind, "--parity", "1")
            assert from_file == direct


def test_text_format(capsys):
    _, out, _ = run(capsys, "solve", "--algebra", "k3", "--kind", "der", "--parity", "1", "--format", "text")
    assert "dim: 2" in out and "kind: \"der\"" in out


def test_verify_exit_codes_and_determinism(capsys, monkeypatch):
    code, a, _ = run(capsys, "verify", "thm6")
    assert code == 0 and json.loads(a)["pass"]
    monkeypatch.setenv("SJLAB_THREADS", "2")
    _, b, _ = run(capsys, "verify", "thm6")
    assert a == b
    code, _, _ = run(capsys, "verify", "thm99")
    assert code == 2
    code, out, _ = run(capsys, "verify", "sanity", "--field", "F3")
    rep = json.loads(out)
    assert code == 0 and rep["skipped"] == ["mutation:k3"] and rep["skipped_checks"]


def test_verify_failure_exit(capsys, monkeypatch):
    import sjlab.verify as v
    monkeypatch.setitem(v.DER_DIMS, "d_t:t=2", (99, 2))
    code, out, _ = run(capsys, "verify", "thm1")
    assert code == 1 and json.loads(out)["failed"] == ["d_t:t=2"]


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog")
    d = json.loads(out)
    assert code == 0 and "k3" in d["algebras"] and "thm2" in d["suites"]
