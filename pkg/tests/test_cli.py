import io
import json
import subprocess
import sys

import pytest

from mrsections.cli import RunConfig, run
from mrsections.games import REFERENCE_ELLREACH_OUTPUT


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, buf.getvalue()


def test_rho_text():
    assert call("bn", "rho", "-d", "3", "-g", "0", "-r", "3") == (0, "0\n")


def test_rho_json():
    code, out = call("bn", "rho", "-d", "5", "-g", "2", "-r", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["results"][0]["rho"] == 2
    assert set(doc) == {"config", "results", "summary"}


def test_ellreach_matches_reference():
    assert call("games", "ellreach", "--m-max", "6") == (0, REFERENCE_ELLREACH_OUTPUT)
    code, out = call("games", "ellreach", "--m-max", "3")
    assert code == 0 and out.endswith("0 0 2 : [4, 2]\n")


def test_conic_check():
    code, out = call("games", "conicr-check", "--max-sum", "8", "--max-len", "4")
    doc = json.loads(out)
    assert code == 0 and doc["summary"] == {"pass": 1, "fail": 0}


def test_bn_table():
    code, out = call("bn", "table")
    rows = json.loads(out)["results"][0]["quadric"]
    assert code == 0 and {"m": 2, "n": 3, "dg": [[6, 4]]} in rows


def test_plane_exception():
    code, out = call("sections", "plane", "--sig", "0,0,1", "-m", "2", "--seeds", "4")
    rep = json.loads(out)["results"][0]
    assert code == 0 and rep["verdict"] == "deficient(1)" and rep["ranks"] == [5] * 4


def test_quadric_csv_and_single_sampler_mismatch():
    code, out = call("sections", "quadric", "--sig", "0,0,1", "-m", "3", "-n", "2",
                     "--seeds", "2", "--format", "csv")
    assert code == 0 and out.splitlines()[1].startswith('"(0,0,1)",2,3,12,12,10,12,deficient(2)')
    code, _ = call("sections", "quadric", "--sig", "1,1,0", "-m", "2", "-n", "2",
                   "--seeds", "3", "--sampler", "single")
    assert code == 1


def test_secant_dims():
    code, out = call("sections", "secant-dims", "--seeds", "2")
    assert code == 0 and [r["dims"] for r in json.loads(out)["results"]] == [[9, 8, 9]] * 2


def test_plan_commands():
    code, out = call("plan", "split", "-d", "20", "-r", "4", "-m", "3")
    res = json.loads(out)["results"][0]
    assert code == 0 and (res["d1"], res["d2"], res["direction"]) == (10, 10, "surplus")
    code, out = call("plan", "split", "-d", "9", "-r", "4", "-m", "3")
    assert json.loads(out)["results"][0]["direction"] == "small"
    code, out = call("plan", "build", "-d", "8", "-g", "5", "-r", "4", "--d1", "5", "--d2", "3", "--dot")
    assert code == 0 and out.startswith("graph plan")
    code, out = call("plan", "schedule", "-d", "20", "-g", "5", "-r", "4", "-m", "3")
    assert code == 0 and json.loads(out)["results"][0]["leaves"] == 2


def test_errors_exit_2(capsys):
    assert call("plan", "build", "-d", "12", "-g", "9", "-r", "4", "--d1", "10", "--d2", "2")[0] == 2
    assert call("bn", "rho", "-d", "3", "-g", "0", "-r", "3", "--format", "json")[0] == 0
    assert call("sections", "plane", "--sig", "0,0,1", "--prime", "10")[0] == 2
    assert "error:" in capsys.readouterr().err
    with pytest.raises(SystemExit):
        call("sections", "plane", "--sig", "x")


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig("x", prime=9)
    with pytest.raises(ValueError):
        RunConfig("x", seeds=[])


def test_reports_are_deterministic():
    argv = ["sections", "quadric", "--sig", "0,1,0", "-m", "2", "-n", "2", "--seeds", "3", "--seed-start", "5"]
    assert call(*argv) == call(*argv)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mrsections", "bn", "rho", "-d", "6", "-g", "4", "-r", "3"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "0\n"
