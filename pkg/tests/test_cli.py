"""Command line: exit codes, reports, JSON stability."""

import json
import shutil

import pytest
from click.testing import CliRunner

from nilalg.catalog import BUNDLED
from nilalg.cli import main


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args, env=None):
        return runner.invoke(main, list(args), env=env, catch_exceptions=False)

    return invoke


def _strip_timing(doc):
    for item in doc["items"]:
        item.pop("elapsed_ms", None)
    return doc


def test_verify_pass(run):
    r = run("verify", "B4_10")
    assert r.exit_code == 0
    assert "verify: pass" in r.output


def test_verify_non_nilpotent_file(run, tmp_path):
    path = tmp_path / "idem.alg"
    path.write_text("algebra idem\ndim 1\ne1*e1 = e1\n")
    r = run("verify", str(path))
    assert r.exit_code == 1
    assert "FAIL" in r.output and "nilpotent" in r.output


def test_verify_malformed_file(run, tmp_path):
    path = tmp_path / "bad.alg"
    path.write_text("algebra bad\ndim 2\ne1*e1 = e2 +\n")
    r = run("verify", str(path))
    assert r.exit_code == 2
    assert ":3:9:" in r.output


def test_input_errors_exit_2(run):
    assert run("verify", "NOPE").exit_code == 2
    assert run("verify", "B4_06", "--param", "alpha=0").exit_code == 2
    assert run("verify", "B4_06", "--param", "alpha").exit_code == 2
    assert run("degeneration", "tableB/B10_to_N2", "--param", "alpha=1").exit_code == 2


def test_param_binding(run):
    r = run("derivations", "B4_24", "--param", "alpha=2")
    assert r.exit_code == 0 and "3 expected 3" in r.output
    r = run("derivations", "B4_24", "--param", "α=1")
    assert r.exit_code == 0 and "exceptional" in r.output


def test_cohomology(run):
    r = run("cohomology", "B3s_02")
    assert r.exit_code == 0 and "(4, 1, 3) expected (4, 1, 3)" in r.output
    r = run("cohomology", "N3")
    assert r.exit_code == 0 and "(9, 0, 9)" in r.output
    r = run("cohomology", "B3_01")
    assert "H2 <D(1,2), D(3,1)>" in r.output


def test_extend(run, tmp_path):
    coc = tmp_path / "d11.coc"
    coc.write_text("cocycle B2s_01 over N1\ncomponent: D(1,1)\n")
    r = run("extend", "N1", str(coc))
    assert r.exit_code == 0
    assert "e1*e1 = e2" in r.output
    coc.write_text("cocycle B4_20 over B3_01\ncomponent: D(1,2) + D(3,1)\n")
    r = run("extend", "B3_01", str(coc))
    assert r.exit_code == 0
    body = [l for l in r.output.splitlines() if "*" in l and not l.startswith("#")]
    assert body == ["e1*e1 = e2", "e1*e2 = e4", "e2*e1 = e3", "e3*e1 = e4"]
    assert "non-split" in r.output


def test_extend_rejects_non_cocycle(run, tmp_path):
    coc = tmp_path / "bad.coc"
    coc.write_text("cocycle X over B2s_01\ncomponent: D(2,2)\n")
    r = run("extend", "B2s_01", str(coc))
    assert r.exit_code == 2
    assert "theta(xy,z)=theta(xz,y)" in r.output
    assert "(e1, e1, e2)" in r.output


def test_annihilator_and_fingerprint(run):
    r = run("annihilator", "B4_20", "--json")
    doc = json.loads(r.output)
    assert doc["items"][0]["details"].startswith("dim 1")
    r = run("fingerprint", "B4_10", "--json")
    fp = json.loads(json.loads(r.output)["items"][0]["details"])
    assert fp["dim_der"] == 2 and fp["dim_powers"] == [2, 1, 0]


def test_degeneration(run, tmp_path):
    assert run("degeneration", "tableB/B10_to_B13").exit_code == 0
    ident = tmp_path / "id.deg"
    ident.write_text("degeneration id\nsource B4_20\ntarget B4_20\nE1 = e1\nE2 = e2\nE3 = e3\nE4 = e4\n")
    assert run("degeneration", str(ident)).exit_code == 0
    rev = tmp_path / "rev.deg"
    rev.write_text("degeneration rev\nsource B4_13\ntarget B4_10\nE1 = e1\nE2 = e2\nE3 = e3\nE4 = e4\n")
    r = run("degeneration", str(rev))
    assert r.exit_code == 1
    assert "c_13^4" in r.output


def test_normalization(run):
    assert run("normalization", "B3_01/1").exit_code == 0
    assert run("normalization", "B3_02").exit_code == 0
    assert run("normalization", "B3_01/9").exit_code == 2


def test_list(run):
    r = run("list", "certificates")
    assert r.output.splitlines()[0] == "tableB/B10_to_N2"
    assert len(r.output.splitlines()) == 25


def test_json_round_trip_byte_identical(run):
    r = run("cohomology", "B3_02", "--json")
    text = r.output.rstrip("\n")
    again = json.dumps(json.loads(text), indent=2, ensure_ascii=False)
    assert again == text
    doc = json.loads(text)
    assert set(doc) == {"command", "status", "items"}
    assert {"subject", "check", "outcome", "details"} <= set(doc["items"][0])


def test_report_all_pass_and_deterministic(run):
    first = run("report-all", "--json")
    second = run("report-all", "--json")
    assert first.exit_code == 0
    a, b = json.loads(first.output), json.loads(second.output)
    assert a["status"] == "pass"
    assert _strip_timing(a) == _strip_timing(b)
    text = first.output.rstrip("\n")
    assert json.dumps(json.loads(text), indent=2, ensure_ascii=False) == text


def test_corrupted_fixture_gives_one_failure(run, tmp_path):
    root = tmp_path / "fixtures"
    shutil.copytree(BUNDLED, root)
    exp = root / "expected" / "B4_17.exp"
    exp.write_text(exp.read_text().replace("der=5", "der=6"))
    r = run("--fixtures", str(root), "report-all", "--json")
    assert r.exit_code == 1
    doc = json.loads(r.output)
    failed = [i for i in doc["items"] if i["outcome"] == "fail"]
    assert len(failed) == 1
    assert failed[0]["subject"] == "B4_17"
    assert doc["status"] == "partial"


def test_fixture_env_variable(run, tmp_path):
    root = tmp_path / "fixtures"
    shutil.copytree(BUNDLED, root)
    (root / "algebras" / "B4_10.alg").unlink()
    r = run("verify", "B4_10", env={"NILALG_FIXTURES": str(root)})
    assert r.exit_code == 2
