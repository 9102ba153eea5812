import csv
import json
import shutil
import subprocess
import sys

import pytest

from manova_lab import __version__
from manova_lab.cli import CONJECTURE_BANNER, dumps, main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_suite_passes(capsys):
    code, out, _ = run(["verify", "combinatorics"], capsys)
    assert code == 0
    assert "FAIL" not in out and out.strip().endswith("checks passed")


def test_verify_report(tmp_path, capsys):
    path = tmp_path / "v.json"
    code, _, _ = run(["verify", "manova", "--out", str(path)], capsys)
    report = json.loads(path.read_text())
    assert code == 0 and report["passed"]
    assert report["version"] == __version__ and report["claims"]
    assert all(r["passed"] for r in report["results"])


def test_bogus_suite_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "bogus"])
    assert exc.value.code == 2


def test_invalid_alpha(capsys):
    code, _, err = run(["esd", "--alpha", "1.5", "--beta", "0.5"], capsys)
    assert code == 2 and "alpha must lie in (0,1)" in err
    code, _, err = run(["edge", "--alpha", "0.3", "--beta", "0", "--n-list", "16"], capsys)
    assert code == 2 and "beta must lie in (0,1)" in err


def test_bad_arguments(capsys):
    assert run(["esd", "--alpha", "0.3", "--beta", "0.5", "--kmax", "30"], capsys)[0] == 2
    assert run(["edge", "--alpha", "0.3", "--beta", "0.5", "--n-list", "a,b"], capsys)[0] == 2
    assert run(["esd", "--alpha", "0.3", "--beta", "0.5", "--out", "/nonexistent/dir/x.json", "--n", "8", "--trials", "1"], capsys)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["esd", "--alpha", "0.3"])
    assert exc.value.code == 2


def test_esd_json_round_trip(tmp_path, capsys):
    path = tmp_path / "esd.json"
    argv = ["esd", "--alpha", "0.3", "--beta", "0.5", "--n", "64", "--trials", "2", "--kmax", "4", "--seed", "9", "--out", str(path)]
    code, out, _ = run(argv, capsys)
    assert code == 0 and "max |diff|" in out
    text = path.read_text()
    report = json.loads(text)
    assert dumps(report) == text
    assert report["config"]["alpha"] == {"input": "0.3", "rational": "3/10"}
    assert report["seed"] == 9 and report["version"] == __version__ and report["claims"]
    assert len(report["moment_table"]) == 4
    assert report["max_abs_diff"] == max(r["abs_diff"] for r in report["moment_table"])


def test_esd_is_byte_identical_on_rerun(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        run(["esd", "--alpha", "0.3", "--beta", "0.5", "--n", "48", "--trials", "1", "--seed", "4", "--out", str(p)], capsys)
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_esd_to_stdout(capsys):
    code, out, err = run(["esd", "--alpha", "1/4", "--beta", "1/2", "--n", "32", "--trials", "1", "--kmax", "2"], capsys)
    assert code == 0 and json.loads(out)["command"] == "esd"
    assert "max |diff|" in err


def test_esd_csv(tmp_path, capsys):
    path = tmp_path / "esd.csv"
    argv = ["esd", "--alpha", "0.3", "--beta", "0.5", "--n", "64", "--trials", "2", "--bins", "20", "--format", "csv", "--out", str(path)]
    assert run(argv, capsys)[0] == 0
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["bin_center", "count", "empirical_density", "manova_density"]
    assert len(rows) == 21
    assert sum(int(r[1]) for r in rows[1:]) == 128
    meta = json.loads((tmp_path / "esd.csv.meta.json").read_text())
    assert meta["config"]["format"] == "csv"


def test_edge_proved_regime(tmp_path, capsys):
    path = tmp_path / "edge.json"
    argv = ["edge", "--alpha", "0.6", "--beta", "0.5", "--n-list", "32,64", "--trials", "4", "--seed", "1", "--out", str(path)]
    code, _, err = run(argv, capsys)
    report = json.loads(path.read_text())
    assert CONJECTURE_BANNER not in err
    assert report["regime"] == "proved" and [r["N"] for r in report["rows"]] == [32, 64]
    assert code == (0 if report["passed"] else 1)


def test_edge_conjecture_banner(capsys):
    code, out, err = run(["edge", "--alpha", "0.3", "--beta", "0.4", "--n-list", "32", "--trials", "2"], capsys)
    assert "conjecture regime" in err
    assert json.loads(out)["regime"] == "conjecture"


def test_thread_env(monkeypatch, capsys):
    monkeypatch.setenv("MANOVA_LAB_THREADS", "zero")
    code, _, err = run(["edge", "--alpha", "0.3", "--beta", "0.5", "--n-list", "16", "--trials", "1"], capsys)
    assert code == 2 and "MANOVA_LAB_THREADS" in err
    monkeypatch.setenv("MANOVA_LAB_THREADS", "1")
    code, out1, _ = run(["edge", "--alpha", "0.3", "--beta", "0.5", "--n-list", "16", "--trials", "3"], capsys)
    monkeypatch.setenv("MANOVA_LAB_THREADS", "4")
    code, out4, _ = run(["edge", "--alpha", "0.3", "--beta", "0.5", "--n-list", "16", "--trials", "3"], capsys)
    assert out1 == out4


def test_console_script():
    exe = shutil.which("manova-lab")
    cmd = [exe] if exe else [sys.executable, "-m", "manova_lab.cli"]
    res = subprocess.run(cmd + ["--version"], capture_output=True, text=True)
    assert res.returncode == 0 and __version__ in res.stdout
    res = subprocess.run(cmd + ["verify", "nope"], capture_output=True, text=True)
    assert res.returncode == 2
