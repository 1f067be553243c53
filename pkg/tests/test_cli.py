import io
import json
import subprocess
import sys

import pytest

from momentpos.cli import main

DIAG_2_M3 = {"kind": "matrix", "matrix": {"size": 2, "rows": [["2", "0"], ["0", "-3"]]}}
CYCLE = {"kind": "matrix", "matrix": {"rows": [["0", "0", "1"], ["1", "0", "0"], ["0", "1", "0"]]}}
POLY = {"kind": "ncpoly", "poly": {"letters": 2, "terms": [{"word": [1, 2], "coeff": "1"},
                                                          {"word": [2, 1], "coeff": "-2"}]}}


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_decide_negative_witness(tmp_path, capsys):
    code, out = run(capsys, "decide", "--mode", "auto", write(tmp_path, "a.json", DIAG_2_M3))
    assert code == 1
    assert out["verdict"] == "no"
    assert (out["certificate"]["n"], out["certificate"]["value"]) == (1, "-1")


def test_decide_orthogonal_finite_group(tmp_path, capsys):
    code, out = run(capsys, "decide", "--mode", "orthogonal", write(tmp_path, "c.json", CYCLE))
    assert code == 0
    assert out["certificate"]["kind"] == "finite_group" and out["certificate"]["order"] == 3


def test_polya_witness(tmp_path, capsys):
    code, out = run(capsys, "polya", write(tmp_path, "p.json", POLY))
    assert code == 1 and out["word"] == [2, 1] and out["coeff"] == "-2"


def test_polya_nonnegative_and_padding(tmp_path, capsys):
    poly = {"letters": 2, "terms": [{"word": [1], "coeff": "3"}, {"word": [2, 2], "coeff": "1"}]}
    code, out = run(capsys, "polya", write(tmp_path, "p.json", poly))
    assert code == 0 and out["kind"] == "polya_all_nonneg"
    poly["terms"].append({"word": [1, 1, 2], "coeff": "-1"})
    poly["terms"].append({"word": [2], "coeff": "-1"})
    code, out = run(capsys, "polya", "--pad", write(tmp_path, "q.json", poly))
    assert code == 1 and out["word"] == [2] and len(out["matrices"][0]) == 4


def test_unknown_exit_code(tmp_path, capsys):
    inst = {"kind": "matrix", "matrix": {"rows": [["100/99", 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]}}
    path = write(tmp_path, "u.json", inst)
    code, out = run(capsys, "decide", "--mode", "dominant", "--max-n", "10", path)
    assert code == 2 and out["verdict"] == "unknown"
    assert out["certificate"]["budget"]["max_moment_index"] == 10
    code, out = run(capsys, "decide", "--mode", "dominant", path)
    assert code == 0


def test_options_in_file(tmp_path, capsys):
    inst = dict(DIAG_2_M3, matrix={"rows": [["2", "0"], ["0", "-1"]]},
                options={"mode": "general", "epsilon": "1", "progression": [2, 1]})
    code, out = run(capsys, "decide", write(tmp_path, "g.json", inst))
    assert code == 0 and out["criterion"] == "i"


def test_spectra(tmp_path, capsys):
    code, out = run(capsys, "spectra", write(tmp_path, "r.json", {"rows": [["3/5", "-4/5"], ["4/5", "3/5"]]}))
    assert code == 0
    assert out["flags"]["all_unit_modulus"] is True and out["flags"]["all_roots_of_unity"] is False


def test_lrs_command(tmp_path, capsys):
    code, out = run(capsys, "lrs", write(tmp_path, "l.json", {"coeffs": ["0", "-1"], "initial": ["1", "0"]}))
    assert code == 1 and out["certificate"]["n"] == 3
    code, out = run(capsys, "lrs", write(tmp_path, "f.json", {"coeffs": [1, 1], "initial": [1, 1]}))
    assert code == 0


def test_gadget_report(tmp_path, capsys):
    inst = {"kind": "mortality", "matrices": [[["0", "1"], ["0", "0"]]], "N": [["1", "0"], ["0", "1"]]}
    code, out = run(capsys, "gadget", "--bound", "3", "--n", "4", write(tmp_path, "m.json", inst))
    assert code == 0
    assert out["lifted_check"]["mortal"] == [2] and out["lifted_check"]["negative_lifted"] == [2, 1]
    assert len(out["comm_moment_identity"]) == 4 and all(c["equal"] for c in out["comm_moment_identity"])
    code, report = run(capsys, "verify-certificate", write(tmp_path, "rep.json", out))
    assert code == 0 and report["ok"]


def test_verify_round_trip_and_tamper(tmp_path, capsys):
    code, out = run(capsys, "decide", write(tmp_path, "a.json", DIAG_2_M3))
    code, report = run(capsys, "verify-certificate", write(tmp_path, "cert.json", out))
    assert code == 0 and report["ok"]
    out["certificate"]["value"] = "-5"
    code, report = run(capsys, "verify-certificate", write(tmp_path, "bad.json", out))
    assert code == 1 and not report["ok"]


def test_input_errors(tmp_path, capsys):
    code, out = run(capsys, "decide", write(tmp_path, "bad.json", "{not json"))
    assert code == 3 and "malformed JSON" in out["error"]
    code, out = run(capsys, "decide", str(tmp_path / "missing.json"))
    assert code == 3 and "cannot read" in out["error"]
    code, out = run(capsys, "decide", write(tmp_path, "k.json", {"kind": "spaceship"}))
    assert code == 3
    code, out = run(capsys, "decide", write(tmp_path, "r.json", {"rows": [["1", "2"]]}))
    assert code == 3
    code, out = run(capsys, "decide", "--mode", "orthogonal", write(tmp_path, "o.json", DIAG_2_M3))
    assert code == 3 and "orthogonal" in out["error"]
    code, out = run(capsys, "polya", write(tmp_path, "c.json", CYCLE))
    assert code == 3


def test_stdin(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(CYCLE)))
    code, out = run(capsys, "decide", "-")
    assert code == 0 and out["verdict"] == "yes"


def test_batch_and_jobs(tmp_path, capsys):
    a = write(tmp_path, "a.json", DIAG_2_M3)
    c = write(tmp_path, "c.json", CYCLE)
    code, out = run(capsys, "decide", "--jobs", "2", c, a)
    assert code == 1
    assert [r["verdict"] for r in out["results"]] == ["yes", "no"]
    assert [r["input"] for r in out["results"]] == [c, a]
    code_seq, out_seq = run(capsys, "decide", c, a)
    assert (code_seq, out_seq) == (code, out)
    code, report = run(capsys, "verify-certificate", write(tmp_path, "batch.json", out))
    assert code == 0 and all(r["ok"] for r in report["results"])


def test_out_file_and_byte_stability(tmp_path, capsys):
    path = write(tmp_path, "c.json", CYCLE)
    target = tmp_path / "out.json"
    assert main(["decide", path, "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    first = target.read_text()
    main(["decide", path, "--out", str(target)])
    assert target.read_text() == first
    assert first == json.dumps(json.loads(first), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def test_module_entry_point(tmp_path):
    path = write(tmp_path, "a.json", DIAG_2_M3)
    proc = subprocess.run([sys.executable, "-m", "momentpos", "decide", path], capture_output=True, text=True)
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["certificate"]["value"] == "-1"


def test_usage_error_is_an_input_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["decide", "--mode", "sideways", "x.json"])
    assert exc.value.code == 3
    assert "error" in json.loads(capsys.readouterr().out)
