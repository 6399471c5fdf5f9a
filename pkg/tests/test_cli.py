import json
import subprocess
import sys

import pytest

from gmtorsion.cli import TIMEOUT_ENV, main, run
from gmtorsion.triplegroup import GroupContext, PrimitiveTriple, check


def ok(argv):
    result = run(argv)
    assert result.status == "ok", result.diagnostics
    return result


def test_pell():
    assert ok(["pell", "5"]).render() == '{"a":"9","b":"4","negative":{"a":"2","b":"1"}}\n'
    assert ok(["pell", "3"]).payload["negative"] is None
    assert ok(["pell", "5", "--power", "2"]).payload == {"n": "2", "a": "161", "b": "72"}


def test_cf():
    doc = ok(["cf", "7", "--convergents", "4"]).payload
    assert doc["period"] == ["1", "1", "1", "4"]
    assert doc["convergents"][-1] == ["8", "3"]


def test_group_commands():
    assert ok(["group", "add", "5", "2,1,3", "2,1,3"]).render() == '{"triple":["-1","4","9"]}\n'
    assert ok(["group", "neg", "5", "2,1,3"]).payload == {"triple": ["-2", "1", "3"]}
    assert ok(["group", "mul", "5", "2,1,3", "--k", "2"]).payload == {"triple": ["-1", "4", "9"]}
    assert ok(["group", "order", "5", "-1,4,9"]).payload == {"order": "infinite"}
    assert ok(["group", "order", "3", "1,1,2"]).payload == {"order": "3"}


def test_printed_triples_round_trip():
    ctx = GroupContext(29)
    t = PrimitiveTriple.parse("70,13,99")
    for _ in range(4):
        out = ok(["group", "add", "29", str(t), "70,13,99"]).payload["triple"]
        t = check(ctx, PrimitiveTriple.parse(",".join(out)))
    assert t.z > 99


def test_lambda():
    docs = ok(["lambda", "5", "--limit", "100"]).payload
    assert [d["p"] for d in docs] == ["29", "61", "89"]
    wit = ok(["lambda", "5", "--limit", "30", "--witness"]).payload[0]["witness"]
    assert wit["triple"] == ["11", "12", "29"]
    lemma = ok(["lambda", "2", "--limit", "100", "--criterion", "lemma32"]).payload
    assert "41" in [d["p"] for d in lemma] and all(d["inLambda"] for d in lemma)
    assert ok(["lambda", "2", "--limit", "2000", "--jobs", "2"]).render() == \
        ok(["lambda", "2", "--limit", "2000"]).render()


def test_class():
    assert ok(["class", "29", "--number"]).payload == {"m": "29", "D": "-116", "h": "6"}
    doc = ok(["class", "5", "--map", "2,1,3"]).payload
    assert doc["form"] == ["2", "2", "3"] and doc["principal"] is False
    assert ok(["class", "5", "--represents", "9"]).payload["representation"] == ["2", "1"]
    assert ok(["class", "29", "--represents", "99"]).payload["representation"] is None


def test_torsion_certify():
    doc = ok(["torsion", "certify", "29", "70,13,99"]).payload
    assert doc["evidence"] == "representation_failure"
    assert doc["doubling"] == ["-1", "1820", "9801"]


def test_scan_table():
    lines = ok(["scan", "table", "--max-s", "7"]).render().splitlines()
    assert [json.loads(l)["m"] for l in lines] == ["5", "145", "985", "5654885", "192099601", "261029261"]
    cands = ok(["scan", "candidates", "--max-s", "3"]).payload
    assert cands[2]["mGreaterC"] is False and cands[2]["certificate"]["evidence"] == "representation_failure"


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["pell", "4"],
    ["group", "add", "5", "2,1,3"],
    ["group", "add", "5", "2,1,4", "2,1,3"],
    ["group", "add", "5", "2;1;3", "2,1,3"],
    ["torsion", "certify", "6", "1,2,5"],
    ["lambda", "5"],
    ["scan", "table", "--max-s", "0"],
    ["pell", "x"],
])
def test_invalid_input_exit_two(argv):
    result = run(argv)
    assert (result.status, result.exit_code) == ("invalid", 2)
    assert result.render() == ""


def test_internal_error_exit_one(monkeypatch):
    import gmtorsion.pell as pell

    def boom(m):
        raise RuntimeError("kaboom")

    monkeypatch.setattr(pell, "least_pell", boom)
    result = run(["pell", "5"])
    assert (result.status, result.exit_code) == ("error", 1)
    assert "kaboom" in result.diagnostics


def test_timeout_precedence(monkeypatch):
    seen = []
    import gmtorsion.scan as scan

    real = scan.reproduce_table

    def spy(max_s, timeout=None):
        seen.append(timeout)
        return real(max_s, timeout=timeout)

    monkeypatch.setattr(scan, "reproduce_table", spy)
    monkeypatch.setenv(TIMEOUT_ENV, "2500")
    ok(["scan", "table", "--max-s", "1"])
    ok(["--timeout-factor-ms", "700", "scan", "table", "--max-s", "1"])
    monkeypatch.delenv(TIMEOUT_ENV)
    ok(["scan", "table", "--max-s", "1"])
    assert seen == [2.5, 0.7, 10.0]
    monkeypatch.setenv(TIMEOUT_ENV, "soon")
    assert run(["scan", "table", "--max-s", "1"]).exit_code == 2


def test_main_streams(capsys):
    assert main(["pell", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["a"] == "3"
    assert main(["pell", "9"]) == 2
    assert "invalid" in capsys.readouterr().err


def test_subprocess_output_is_byte_identical():
    cmd = [sys.executable, "-m", "gmtorsion", "scan", "table", "--max-s", "7"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first.count(b"\n") == 6
