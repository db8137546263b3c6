import json

import pytest

from h10ff.cli import main, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_range():
    assert list(parse_range("-3:3")) == list(range(-3, 4))
    assert list(parse_range("5")) == [5]
    assert list(parse_range("2:1")) == []


def test_zn_default(capsys):
    code, out, _ = run(capsys, "zn")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 7
    assert "Z[0] = 0" in lines
    for n, line in zip(range(-3, 4), lines):
        if n:
            assert line.endswith(f"value_at_infinity = {n}: OK")


def test_zn_cap(capsys):
    code, _, err = run(capsys, "zn", "--n-range", "100")
    assert code == 2 and "CapExceeded" in err


def test_zn_json(capsys):
    code, out, _ = run(capsys, "zn", "--n-range", "2", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["n"] == 2 and rec["value_at_infinity"] == "2" and rec["ok"]


def test_mult_table(capsys):
    code, out, _ = run(capsys, "mult-table", "--bound", "1")
    assert code == 0 and out.strip().endswith("mismatches=0: OK")
    code, out, _ = run(capsys, "mult-table", "--bound", "2", "--method", "infinity")
    assert code == 0 and "cells=225" in out
    code, _, err = run(capsys, "mult-table", "--bound", "6")
    assert code == 2 and "CapExceeded" in err


def test_add_check(capsys):
    code, out, _ = run(capsys, "add-check", "--bound", "2")
    assert code == 0 and len(out.splitlines()) == 25
    assert "P_-2 + P_2 = P_0: OK" in out


def test_kr_claims_small(capsys):
    code, out, _ = run(capsys, "kr-claims", "--m-range", "0", "--nr-range", "1")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "m=0 n=1 r=1 s=1 w_m(A)=0 residue_ok=True square=False"
    assert "2s² = 2 (s=1): OK" in lines and "2s² = 8 (s=2): OK" in lines


def test_kr_claims_empty(capsys):
    code, out, _ = run(capsys, "kr-claims", "--m-range", "0", "--nr-range", "1:0")
    assert code == 0 and out == ""


def test_kr_claims_cap(capsys):
    code, _, err = run(capsys, "kr-claims", "--m-range", "9")
    assert code == 2 and "CapExceeded" in err


def test_reduce_and_verify(tmp_path, capsys):
    src = tmp_path / "f.txt"
    src.write_text("x^2 - 4\n")
    code, out, _ = run(capsys, "reduce", str(src))
    doc = json.loads(out)
    assert code == 0 and len(doc["equations"]) == 81
    code, again, _ = run(capsys, "reduce", str(src))
    assert again == out
    good = tmp_path / "good.json"
    good.write_text('{"x": 2}')
    code, out, _ = run(capsys, "verify", str(src), str(good))
    assert code == 0 and out.splitlines()[-1].endswith("OK")
    bad = tmp_path / "bad.json"
    bad.write_text('{"x": 3}')
    code, out, _ = run(capsys, "verify", str(src), str(bad))
    assert code == 1 and "[equality] N_1,K_4: fail" in out


def test_reduce_zero_and_errors(tmp_path, capsys):
    code, out, _ = run(capsys, "reduce", "0")
    assert code == 0 and json.loads(out) == {"variables": [], "equations": []}
    code, _, err = run(capsys, "reduce", "x/2")
    assert code == 2 and "NonIntegerCoefficient" in err
    code, _, err = run(capsys, "reduce", "x +")
    assert code == 2
    w = tmp_path / "w.json"
    w.write_text('{"x": "one"}')
    code, _, err = run(capsys, "verify", "x - 1", str(w))
    assert code == 2 and "WitnessSchemaError" in err
    code, _, err = run(capsys, "verify", "x - 1", str(tmp_path / "missing.json"))
    assert code == 2


def test_verify_json(tmp_path, capsys):
    w = tmp_path / "w.json"
    w.write_text('{"x": 1}')
    code, out, _ = run(capsys, "verify", "x - 1", str(w), "--format", "json", "--fold")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert recs[-1]["summary"] == {"pass": 28, "fail": 0, "uncovered": 0}
    assert recs[-1]["folded"] == "pass"


def test_selftest_and_out(tmp_path, capsys):
    dest = tmp_path / "report.txt"
    code, out, _ = run(capsys, "selftest", "--seed", "3", "--out", str(dest))
    assert code == 0 and out == ""
    text = dest.read_text()
    assert "FAIL" not in text and "reduce x - 1 with x = 1: OK" in text


def test_byte_identical_reports(capsys):
    a = run(capsys, "selftest", "--seed", "5")[1]
    b = run(capsys, "selftest", "--seed", "5")[1]
    assert a == b


def test_usage_error(capsys):
    with pytest.raises(SystemExit):
        main(["nope"])
