import json

import pytest

from tadic.cli import _merge_dash_values, main, read_config


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_polygon_csv(capsys):
    code, out, _ = run(capsys, "polygon", "--p", "5", "--delta", "0..3", "--len", "6")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("k,")
    slopes = [line.split(",")[1] for line in lines[1:]]
    assert slopes == ["0", "2", "2", "4", "6", "6"]


def test_polygon_json_default_length_and_svg(capsys, tmp_path):
    code, out, _ = run(capsys, "polygon", "--p", "7", "--delta", "-1..1", "--kind", "both", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["length"] == 6
    assert len(data["arithmetic"]["slopes"]) == 6 and "hodge_scaled" in data
    target = tmp_path / "p.svg"
    code, out, _ = run(capsys, "polygon", "--p", "7", "--delta", "0..2", "--format", "svg", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("<svg")


def test_hasse_text(capsys):
    code, out, _ = run(capsys, "hasse", "--p", "11", "--delta", "0..3")
    assert code == 0
    assert "m=2: 2*y1*y3^3 + 3*y2^2*y3^2" in out.splitlines()


def test_hasse_evaluation_json(capsys):
    code, out, _ = run(capsys, "hasse", "--p", "11", "--delta", "0..3", "--coeffs", "a(1)=4,a(2)=1,a(3)=1",
                       "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["evaluation"]["nonzero"] is False


def test_lfun_kloosterman(capsys):
    code, out, _ = run(capsys, "lfun", "--p", "5", "--delta", "-1..1", "--coeffs", "a(-1)=1,a(1)=1", "--m", "1")
    data = json.loads(out)
    assert code == 0
    assert data["np_L"] == ["0", "4"] and data["L"]["degree"] == 2
    code, out, _ = run(capsys, "lfun", "--p", "5", "--delta", "-1..1", "--coeffs", "a(-1)=1,a(1)=1",
                       "--format", "text")
    assert "np_slopes: 0,4" in out
    code, out, _ = run(capsys, "lfun", "--p", "5", "--delta", "-1..1", "--coeffs", "a(-1)=1,a(1)=1",
                       "--format", "svg")
    assert code == 0 and "NP" in out


def test_hypothesis_warning_not_failure(capsys, caplog):
    code, out, _ = run(capsys, "lfun", "--p", "3", "--delta", "-1..1", "--coeffs", "a(-1)=1,a(1)=1")
    assert code == 0
    assert json.loads(out)["hypothesis_violated"] is True
    assert any("guarantees do not apply" in r.getMessage() and r.levelname == "WARNING" for r in caplog.records)


def test_dwork_command(capsys):
    code, out, _ = run(capsys, "dwork", "--p", "7", "--delta", "0..2", "--coeffs", "a(1)=1,a(2)=1",
                       "--trace-k", "1")
    data = json.loads(out)
    assert code == 0
    assert data["certificate"]["granted"] is True
    assert data["trace_formula"][0]["ok"] is True
    assert [c["m"] for c in data["coefficients"]] == [1]


def test_dwork_small_prime_skips_certificate(capsys):
    code, out, err = run(capsys, "dwork", "--p", "5", "--delta", "0..2", "--coeffs", "a(1)=1,a(2)=1")
    assert code == 0 and "certificate" not in json.loads(out)


def test_dwork_truncation_exit_code(capsys):
    code, _, err = run(capsys, "dwork", "--p", "7", "--delta", "0..2", "--coeffs", "a(1)=1,a(2)=1",
                       "--deg-bound", "1/10")
    assert code == 3
    assert json.loads(err)["error"] == "TruncationError"


def test_sweep_quadratic(capsys):
    code, out, _ = run(capsys, "sweep", "--p", "7", "--delta", "0..2")
    data = json.loads(out)
    assert code == 0
    assert data["summary"]["rows"] == 42 and data["summary"]["generic"] == 42


def test_sweep_csv_with_fixed_and_sample(capsys):
    argv = ["sweep", "--p", "11", "--delta", "0..3", "--fix", "a(3)=1", "--sample", "5", "--seed", "4",
            "--format", "csv"]
    code, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code == code2 == 0 and out1 == out2
    assert len(out1.strip().splitlines()) == 6


def test_budget_refusal(capsys, monkeypatch):
    code, _, err = run(capsys, "lfun", "--p", "7", "--delta", "0..2", "--coeffs", "a(1)=1,a(2)=1",
                       "--budget", "10")
    assert code == 2
    assert json.loads(err)["error"] == "BudgetExceeded"
    monkeypatch.setenv("TADIC_BUDGET", "10")
    code, _, _ = run(capsys, "lfun", "--p", "7", "--delta", "0..2", "--coeffs", "a(1)=1,a(2)=1")
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["polygon", "--p", "5"],
    ["polygon", "--p", "5", "--delta", "3..1"],
    ["lfun", "--p", "5", "--delta", "0..3"],
    ["lfun", "--p", "5", "--delta", "0..3", "--coeffs", "a(1)=1"],
    ["lfun", "--p", "6", "--delta", "0..1", "--coeffs", "a(1)=1"],
    ["nonsense"],
    [],
])
def test_precondition_exit_code(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 3


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "job.cfg"
    cfg.write_text("# cubic case\np = 11\ndelta = 0..3\nformat = json  # machine output\n")
    code, out, _ = run(capsys, "--config", str(cfg), "hasse")
    data = json.loads(out)
    assert code == 0 and data["p"] == 11
    code, out, _ = run(capsys, "--config", str(cfg), "hasse", "--p", "13")
    assert json.loads(out)["p"] == 13
    bad = tmp_path / "bad.cfg"
    bad.write_text("p 11\n")
    code, _, _ = run(capsys, "--config", str(bad), "hasse")
    assert code == 3
    assert read_config(str(cfg)) == {"p": "11", "delta": "0..3", "format": "json"}


def test_dash_values_merge():
    assert _merge_dash_values(["--delta", "-1..1", "--p", "5"]) == ["--delta=-1..1", "--p", "5"]


def test_verify_subset(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--only", "3,4", "--json", str(report))
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3 and lines[-1] == "2 passed, 0 failed, 0 skipped"
    assert [r["status"] for r in json.loads(report.read_text())] == ["pass", "pass"]


def test_verify_reports_failure_and_skip(capsys):
    code, out, _ = run(capsys, "verify", "--only", "1")
    assert code == 1 and "FAIL" in out
    code, out, _ = run(capsys, "verify", "--only", "5", "--budget", "100")
    assert code == 0 and "0 passed, 0 failed, 1 skipped" in out
