import io
import json
import subprocess
import sys

import pytest

from superstrange.cli import RunConfig, build_parser, main
from superstrange.formulas import VerificationReport


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_catalog_text():
    code, text = run("catalog")
    assert code == 0
    for fam in ("gl(m|n)", "sl(m|n) m≠n", "osp(m|2n)"):
        assert fam in text
    for exc in ("D(2,1", "F(4)", "G(3)"):
        assert exc not in text


def test_catalog_json():
    code, text = run("catalog", "--json")
    data = json.loads(text)
    assert code == 0
    assert isinstance(data["algebras"], list) and "osp(1|2)" in data["algebras"]


def test_validate_and_export():
    code, text = run("validate", "--algebra", "gl(2|1)")
    assert code == 0 and "PASS super_jacobi" in text
    code, text = run("export", "--algebra", "gl(1|1)")
    assert code == 0 and "E12" in text


def test_verify_strange_osp12():
    code, text = run("verify", "strange", "--algebra", "osp(1|2)")
    assert code == 0
    assert text.startswith("PASS strange osp(1|2)")


def test_verify_very_strange_with_torus():
    code, text = run("verify", "very-strange", "--algebra", "sl(2|1)", "--torus", "1/2,0")
    assert code == 0 and "PASS" in text


def test_verify_even_vsf_json():
    code, text = run("verify", "even-vsf", "--algebra", "sl(2|0)", "--labels", "1,1", "--json")
    assert code == 0
    rec = json.loads(text)
    assert rec["lhs"] == rec["rhs"] == "0" and rec["pass"] is True


def test_verify_samples_stream_one_line_each():
    code, text = run("verify", "sumsixixi", "--algebra", "osp(3|2)", "--samples", "4", "--seed", "9", "--json")
    assert code == 0
    lines = text.strip().splitlines()
    assert len(lines) == 4
    tori = [json.loads(l)["torus"] for l in lines]
    assert all(t for t in tori)


def test_decompose_gl11():
    code, text = run("decompose", "--algebra", "gl(1|1)")
    assert code == 0
    assert "n: {E12}" in text and "h: {E11, E22}" in text and "n_minus: {E21}" in text


def test_decompose_odd_symplectic_and_gl21():
    code, text = run("decompose", "--algebra", "C(0|2)")
    assert code == 0 and "m_plus: {p1}" in text and "m_minus: {q1}" in text
    code, text = run("decompose", "--algebra", "gl(2|1)", "--json")
    d = json.loads(text)
    assert code == 0 and d["m_triv"] == {} and d["g2"]


def test_decompose_fixed_points():
    code, text = run("decompose", "--algebra", "osp(3|2)", "--torus", "1/2,1/3", "--json")
    assert code == 0
    assert json.loads(text)["algebra"].startswith("osp(3|2)^0")


def test_exit_code_one_on_failure():
    code, _ = run("verify", "strange", "--algebra", "gl(2|1)")
    assert code == 1


@pytest.mark.parametrize("argv", [
    ("verify", "strange", "--algebra", "foo(1|1)"),
    ("verify", "very-strange", "--algebra", "sl(2|1)", "--torus", "1/0"),
    ("verify", "very-strange", "--algebra", "sl(2|1)", "--torus", "1/2"),
    ("verify", "even-vsf", "--algebra", "sl(2)"),
    ("verify", "even-vsf", "--algebra", "sl(2)", "--labels", "1,x"),
    ("verify", "nonsense", "--algebra", "sl(2)"),
    ("validate",),
])
def test_exit_code_two_on_bad_input(argv, capsys):
    code, _ = run(*argv)
    assert code == 2


def test_json_output_is_deterministic():
    argv = ("verify", "very-strange", "--algebra", "sl(2|1)", "--samples", "5", "--seed", "42", "--json")
    assert run(*argv)[1] == run(*argv)[1]


def test_run_config_round_trip():
    ns = build_parser().parse_args(["verify", "very-strange", "--algebra", "sl(2|1)", "--torus", "2/4,0",
                                    "--functional", "1,-1", "--seed", "3", "--samples", "2", "--json"])
    cfg = RunConfig.from_args(ns)
    assert cfg.torus == ("1/2", "0")
    assert RunConfig.from_json(cfg.to_json()) == cfg


def test_json_record_reparses():
    code, text = run("verify", "very-strange", "--algebra", "osp(1|2)", "--torus", "1/4", "--json")
    rec = json.loads(text)
    cfg = RunConfig.from_dict(rec.pop("config"))
    assert cfg.algebra == "osp(1|2)" and cfg.fmt == "json"
    rep = VerificationReport.from_dict(rec)
    assert rep.passed and rep.to_dict() == rec


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "superstrange", "verify", "strange", "--algebra", "sl(2|1)"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and "PASS" in proc.stdout
