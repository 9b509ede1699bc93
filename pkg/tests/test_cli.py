import io
import json

import pytest

from trw.certificate import (
    Certificate,
    intpoly_from_json,
    intpoly_to_json,
    load_schema,
    multipoly_from_json,
    multipoly_to_json,
    paramxpoly_from_json,
    paramxpoly_to_json,
)
from trw.cli import run
from trw.families import get_family
from trw.intpoly import IntPoly

jsonschema = pytest.importorskip("jsonschema")


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(tmp_path, *argv):
    path = tmp_path / "cert.json"
    code, out, err = call(*argv, "--json", str(path))
    cert = json.loads(path.read_text()) if path.exists() else None
    if cert is not None:
        jsonschema.validate(cert, load_schema())
    return code, out, err, cert


def test_verify_example(tmp_path):
    code, out, _, cert = call_json(tmp_path, "verify", "--family", "shanks", "--range", "a=-1..50")
    assert code == 0
    assert "52 instances verified, 0 failures" in out
    assert cert["results"]["instances"] == 52 and cert["failures"] == []
    assert cert["elapsed_ms"] == 0


def test_verify_failure_exit_code(tmp_path):
    fam = tmp_path / "fam.txt"
    fam.write_text("name: plus\nparams: a\npoly: x^2 - 2*a*x + 1\nrange a: 0..0\n")
    code, out, _, cert = call_json(tmp_path, "verify", "--family-file", str(fam))
    assert code == 1
    assert len(cert["failures"]) == 1
    assert cert["failures"][0]["totally_real"] is False


def test_witness_example(tmp_path):
    code, out, _, cert = call_json(tmp_path, "witness", "--family", "mruv", "--torsion-half-order", "1")
    assert code == 0
    assert "exponent: 2" in out and "witness: 4*a^2 + 2" in out
    assert cert["results"]["exponent"] == 2


def test_phiw_example(tmp_path):
    code, out, _, cert = call_json(tmp_path, "phiw", "--a", "1", "--b", "5")
    assert code == 0
    assert out.splitlines() == ["{1, 2, 3, 4}", "containment chain: EQUAL"]
    assert cert["results"]["members"] == ["1", "2", "3", "4"]


@pytest.mark.parametrize(
    "argv, code, needle",
    [
        (["list-families"], 0, "gras_sextic"),
        (["powersum", "--poly", "x^2 - 2*x - 1", "--m", "3"], 0, "2, 6, 14"),
        (["rootpower", "--poly", "x^2 - 3*x + 1", "--n", "2"], 0, "x^2 - 7*x + 1"),
        (["sturm", "--poly", "x^3 - 2*x"], 0, "distinct real roots: 3"),
        (["count-roots", "--poly", "x^3 - 2*x", "--lo", "1/2", "--hi", "2"], 0, "1"),
        (["discriminant", "--poly", "x^3 + x^2 - 2*x - 1"], 0, "49"),
        (["cyclic-cubic", "--poly", "x^3 + x^2 - 2*x - 1"], 0, "square discriminant: yes"),
        (["cyclic-cubic", "--poly", "x^3 - 2"], 1, "square discriminant: no"),
        (["gen-quartic2", "--a", "1", "--b", "1", "--d", "2"], 0, "x^4 - 4*x^3 - 6*x^2 + 4*x + 1"),
        (["gen-unit-family", "--h", "t1*t2", "--alpha", "y^2 - 2"], 0, "0 failures"),
        (["foursquares", "--m", "310"], 0, "17^2 + 4^2 + 2^2 + 1^2 = 310"),
        (["kamke", "--poly", "x^2", "--m", "23", "--r", "4"], 0, "f(3) + f(3) + f(2) + f(1)"),
        (["kamke", "--poly", "x^3", "--m", "5", "--r", "3"], 0, "NotFound"),
        (["kamke", "--poly", "x^2 - 10*x", "--m", "35", "--r", "2", "--normalize", "0"], 0, "35 = f(2) + f(1)"),
        (["kamke-scan", "--poly", "x^3", "--m-max", "300", "--r-max", "9"], 0, "overall maximum r: 9 (first at m=23)"),
        (["kamke-scan", "--poly", "x^3", "--m-max", "30", "--r-max", "4"], 0, "gaps"),
        (["phiw", "--a", "2", "--b", "5"], 0, "{1, 2}"),
    ],
)
def test_subcommands(tmp_path, argv, code, needle):
    got, out, err, cert = call_json(tmp_path, *argv)
    assert got == code, err
    assert needle in out
    assert cert["command"] == argv[0]
    assert bool(cert["failures"]) == (code == 1)


def test_parse_subcommand(tmp_path):
    good = tmp_path / "good.txt"
    good.write_text("name: mruv\nparams: a\npoly: x^2 - 2*a*x - 1\n")
    code, out, _, cert = call_json(tmp_path, "parse", str(good))
    assert code == 0 and cert["results"]["valid"] is True
    bad = tmp_path / "bad.txt"
    bad.write_text("poly: x^2 - 2*a*x - 2\n")
    code, out, _, cert = call_json(tmp_path, "parse", str(bad))
    assert code == 1 and cert["results"]["valid"] is False
    broken = tmp_path / "broken.txt"
    broken.write_text("poly: x^2 - 2a*x - 1\n")
    code, _, err = call("parse", str(broken))
    assert code == 2 and "line 1" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--family", "nope"],
        ["verify", "--family", "shanks", "--range", "b=0..1"],
        ["verify", "--family", "shanks", "--range", "a=5..1"],
        ["discriminant", "--poly", "2*x^2 + 1"],
        ["powersum", "--poly", "x^2 + +", "--m", "2"],
        ["count-roots", "--poly", "x^3 - 2*x", "--lo", "0", "--hi", "2"],
        ["count-roots", "--poly", "x", "--lo", "0"],
        ["parse", "/nonexistent/file"],
        ["kamke", "--poly", "x^2 - 4", "--m", "3", "--r", "2"],
        ["frobnicate"],
        ["verify"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, _, _ = call(*argv)
    assert code == 2


def test_determinism_and_jobs(tmp_path):
    a, b, c = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "c.json"
    run(["verify", "--family", "lehmer", "--json", str(a)], io.StringIO())
    run(["verify", "--family", "lehmer", "--json", str(b)], io.StringIO())
    run(["verify", "--family", "lehmer", "--jobs", "3", "--json", str(c)], io.StringIO())
    assert a.read_bytes() == b.read_bytes() == c.read_bytes()


def test_trw_jobs_env(tmp_path, monkeypatch):
    monkeypatch.setenv("TRW_JOBS", "2")
    a = tmp_path / "a.json"
    run(["kamke-scan", "--poly", "x^2", "--m-max", "40", "--r-max", "5", "--json", str(a)], io.StringIO())
    monkeypatch.setenv("TRW_JOBS", "1")
    b = tmp_path / "b.json"
    run(["kamke-scan", "--poly", "x^2", "--m-max", "40", "--r-max", "5", "--json", str(b)], io.StringIO())
    assert a.read_bytes() == b.read_bytes()


def test_timing_flag(tmp_path):
    _, _, _, cert = call_json(tmp_path, "foursquares", "--m", "7", "--timing")
    assert cert["elapsed_ms"] >= 0


def test_certificate_roundtrip():
    cert = Certificate("x", {"a": "1"}, {"r": [1, 2]}, [{"k": 1}], 3.5)
    assert Certificate.from_dict(json.loads(cert.dumps())) == cert
    assert list(cert.to_dict()) == ["tool_version", "command", "inputs", "results", "failures", "elapsed_ms"]


def test_polynomial_wire_forms():
    f = IntPoly((-1, 10 ** 40, 3))
    assert intpoly_to_json(f)["coeffs"][1] == str(10 ** 40)
    assert intpoly_from_json(intpoly_to_json(f)) == f
    pf = get_family("lehmer").poly
    assert paramxpoly_from_json(json.loads(json.dumps(paramxpoly_to_json(pf)))) == pf
    c = pf.coefficient(3)
    assert multipoly_from_json(multipoly_to_json(c)) == c
