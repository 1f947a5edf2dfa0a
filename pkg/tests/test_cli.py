import json
import subprocess
import sys

import numpy as np
import pytest

from tailfence.cli import main
from tailfence.distributions import Pareto


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def pareto_file(tmp_path):
    x = Pareto(1, 1).sample(np.random.default_rng(99), 10_000)
    path = tmp_path / "pareto.txt"
    path.write_text("\n".join(repr(float(v)) for v in x) + "\n")
    return path


@pytest.fixture
def small_file(tmp_path):
    path = tmp_path / "small.txt"
    path.write_text("1\n2\n3\n4\n5\n6\n7\n100\n")
    return path


@pytest.fixture
def study_file(tmp_path):
    path = tmp_path / "study.json"
    path.write_text(json.dumps({"cells": [{"dist": "pareto(1,1)", "n": 200}, {"dist": "frechet(2)", "n": 100}],
                                "m": 30, "seed": 4}))
    return path


def test_catalog_text_and_json(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and "pareto(1,1)" in out and "p_eR" in out
    code, out, _ = run(capsys, "catalog", "--format", "json", "--sort", "extreme_right")
    rows = json.loads(out)
    assert len(rows) == 18
    vals = [r["p_eR"] for r in rows]
    assert vals == sorted(vals)
    assert set(rows[0]) >= {"family", "params", "p_mL", "p_eL", "p_mR", "p_eR", "p_m2", "p_e2"}


def test_measures_normal(capsys):
    code, out, _ = run(capsys, "measures", "--dist", "normal(0,1)", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["p_mL"] == pytest.approx(0.0035, abs=5e-5)
    assert d["p_mL"] == pytest.approx(d["p_mR"], rel=1e-9)
    assert d["boxplot"]["q2"] == pytest.approx(0.0, abs=1e-12)
    code, text, _ = run(capsys, "measures", "--dist", "normal(0,1)")
    assert code == 0 and "p_mL = 0.00348" in text


def test_measures_uniform_all_zero(capsys):
    _, out, _ = run(capsys, "measures", "--dist", "uniform(0,1)", "--format", "json")
    d = json.loads(out)
    assert all(d[k] == 0 for k in ("p_mL", "p_eL", "p_mR", "p_eR", "p_m2", "p_e2"))


def test_boxplot_and_outliers(capsys, small_file):
    code, out, _ = run(capsys, "boxplot", str(small_file), "--format", "json")
    assert code == 0
    assert json.loads(out)["boxplot"]["outer_right"] == 20.25
    code, out, _ = run(capsys, "outliers", str(small_file), "--format", "json")
    c = json.loads(out)["counts"]
    assert c["extreme_right"] == 1 and c["mild_right"] == 0
    code, out, _ = run(capsys, "outliers", str(small_file))
    assert code == 0 and "extreme_right" in out and "0.125" in out


def test_estimate_par_quartile(capsys, pareto_file):
    code, out, _ = run(capsys, "estimate", str(pareto_file), "--method", "par-quartile", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert list(d["estimates"]) == ["par-quartile"]
    assert d["estimates"]["par-quartile"]["alpha_hat"] == pytest.approx(1.0, abs=0.05)


def test_estimate_reports_failures_inline(capsys, tmp_path):
    path = tmp_path / "u.txt"
    path.write_text("\n".join(str(i) for i in range(1, 21)))
    code, out, _ = run(capsys, "estimate", str(path), "--format", "json")
    assert code == 0
    est = json.loads(out)["estimates"]
    assert est["par-fence"] == {"alpha_hat": None, "reason": "no extreme right outliers in sample"}
    assert est["par-quartile"]["alpha_hat"] is not None
    code, out, _ = run(capsys, "estimate", str(path), "--method", "par-fence")
    assert code == 2 and "no extreme right outliers" in out


def test_estimate_csv_column(capsys, tmp_path):
    path = tmp_path / "d.csv"
    path.write_text("id,x\n" + "".join(f"{i},{v}\n" for i, v in enumerate([1, 2, 3, 4, 5, 6, 7, 100])))
    code, out, _ = run(capsys, "estimate", str(path), "--column", "x", "--method", "par-fence", "--format", "json")
    assert code == 0
    assert json.loads(out)["inputs"]["outer_right_hat"] == 20.25


def test_stdin_input(small_file):
    proc = subprocess.run([sys.executable, "-m", "tailfence.cli", "boxplot", "-", "--format", "json"],
                          input=small_file.read_text(), capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["n"] == 8


def test_simulate(capsys, study_file):
    code, out, _ = run(capsys, "simulate", "--study", str(study_file), "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["config"]["seed"] == 4 and len(d["cells"]) == 2
    code, out2, _ = run(capsys, "simulate", "--study", str(study_file), "--format", "json", "--workers", "2")
    assert out2 == out
    code, out3, _ = run(capsys, "simulate", "--study", str(study_file), "--format", "json", "--seed", "5")
    assert json.loads(out3)["config"]["seed"] == 5 and out3 != out
    code, text, _ = run(capsys, "simulate", "--study", str(study_file))
    assert code == 0 and "best" in text and "frechet(2)" in text


def test_diagnose(capsys, pareto_file):
    code, out, _ = run(capsys, "diagnose", str(pareto_file), "--confidence", "0.99", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert any(c["dist"] == "pareto(1,1)" for c in d["shortlist"])
    assert d["estimates"] is not None
    code, text, _ = run(capsys, "diagnose", str(pareto_file), "--confidence", "0.99")
    assert "5. tail-index estimates" in text and "pareto(1,1)" in text


def test_text_and_json_agree(capsys, small_file):
    _, js, _ = run(capsys, "boxplot", str(small_file), "--format", "json")
    _, text, _ = run(capsys, "boxplot", str(small_file))
    for key, value in json.loads(js)["boxplot"].items():
        assert any(line.split()[:2] == [key, f"{value:.6g}"] for line in text.splitlines())


def test_json_keys_are_stable(capsys, small_file):
    _, out, _ = run(capsys, "estimate", str(small_file), "--format", "json")
    d = json.loads(out)
    assert list(d) == ["n", "estimates", "inputs"]
    assert list(d["inputs"]) == ["q1_hat", "q3_hat", "outer_right_hat", "p_extreme_right_hat"]
    assert list(d["estimates"]) == ["par-fence", "par-quartile", "frech-fence", "frech-quartile", "hillhorror-quartile"]


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["measures"],
        ["measures", "--dist", "pareto(-1,1)"],
        ["measures", "--dist", "lognormal(0,1)"],
        ["estimate", "x.txt", "--method", "hill"],
        ["catalog", "--format", "xml"],
        ["diagnose", "x.txt", "--confidence", "1.5"],
        ["simulate", "--study", "s.json", "--workers", "0"],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert "error" in err and out == ""


def test_data_errors_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, "boxplot", str(tmp_path / "missing.txt"))
    assert code == 2 and "missing.txt" in err
    bad = tmp_path / "bad.txt"
    bad.write_text("1\n2\nthree\n")
    code, _, err = run(capsys, "outliers", str(bad))
    assert code == 2 and "line 3" in err
    short = tmp_path / "short.txt"
    short.write_text("1\n2\n")
    code, _, _ = run(capsys, "boxplot", str(short))
    assert code == 2
    study = tmp_path / "s.json"
    study.write_text('{"cells": [{"dist": "pareto(1,1)", "n": 2}], "m": 5}')
    code, _, _ = run(capsys, "simulate", "--study", str(study))
    assert code == 2


def test_console_script_installed():
    proc = subprocess.run(["tailfence", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("tailfence ")
