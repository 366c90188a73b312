from __future__ import annotations

import csv
import io
import json
import shutil
import subprocess

import pytest

from smallhull.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_construct_r3_q5(capsys):
    code, data = run_json(capsys, "construct", "--r", "3", "--N", "2", "--q", "5")
    assert code == EXIT_OK
    assert data["schema"] == 1 and data["command"] == "construct"
    assert (data["n"], data["k"]) == (6, 3)
    assert data["P"]["raw"] == [[0, 1, 4], [4, 0, 1], [1, 4, 0]]
    assert data["P"]["beta_powers"][0] == ["0", "b^0", "b^2"]
    assert data["certificate"] == "lcd-zero-diagonal-2"


def test_construct_beta_power_v_with_log_ordering(capsys):
    code, data = run_json(
        capsys, "construct", "--r", "2", "--m", "2", "--N", "3", "--q", "25", "--v", "b^2", "--ordering", "log"
    )
    assert code == EXIT_OK
    assert data["v_beta_power"] == "b^2"
    assert data["P"]["beta_powers"][0] == ["b^2", "b^16", "b^8", "b^0"]


def test_construct_hull_one(capsys):
    code, data = run_json(capsys, "construct", "--r", "13", "--N", "3", "--q", "4", "--hull", "1")
    assert code == EXIT_OK and data["certificate"] == "hull1-char2"


def test_analyze_r7_q4(capsys):
    code, data = run_json(capsys, "analyze", "--r", "7", "--N", "3", "--q", "4", "--dual")
    assert code == EXIT_OK
    assert data["distance"]["d"] == 5 and data["distance"]["exact"]
    assert data["hull"] == 0 and data["classification"] == "LCD"
    assert data["dual"]["distance"]["d"] == 5


def test_analyze_with_bound(capsys):
    code, data = run_json(capsys, "analyze", "--r", "5", "--N", "2", "--q", "11", "--ordering", "squares_first", "--bound")
    assert code == EXIT_OK
    assert data["bound"]["certified_bound"] <= data["distance"]["d"]


def test_analyze_budget_interval(capsys):
    code, data = run_json(capsys, "analyze", "--r", "13", "--N", "3", "--q", "4", "--v", "1", "--budget", "100")
    assert code == EXIT_OK
    assert not data["distance"]["exact"]
    assert data["d"] is None
    assert data["distance"]["lower"] <= 8 <= data["distance"]["upper"]


def test_non_prime_r_is_usage_error(capsys):
    code, _, err = run(capsys, "construct", "--r", "4", "--N", "3", "--q", "4")
    assert code == EXIT_USAGE and "not prime" in err


def test_missing_argument_is_usage_error(capsys):
    code, _, err = run(capsys, "construct", "--r", "7", "--q", "4")
    assert code == EXIT_USAGE and "--N" in err


def test_bad_budget(capsys):
    code, _, _ = run(capsys, "analyze", "--r", "7", "--N", "3", "--q", "4", "--budget", "0")
    assert code == EXIT_USAGE


def test_bad_v(capsys):
    code, _, _ = run(capsys, "construct", "--r", "7", "--N", "3", "--q", "4", "--v", "9")
    assert code == EXIT_USAGE


def test_hull_one_precondition(capsys):
    code, _, err = run(capsys, "construct", "--r", "3", "--N", "2", "--q", "7", "--hull", "1")
    assert code == EXIT_USAGE and err.startswith("error:")


def test_unknown_subcommand_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_verify_single_tuple(capsys):
    code, data = run_json(capsys, "verify", "--r", "7", "--N", "3", "--q", "4")
    assert code == EXIT_OK
    assert data["checked"] == 1 and data["passed"]


def test_verify_inadmissible_tuple(capsys):
    code, _, err = run(capsys, "verify", "--r", "7", "--N", "3", "--q", "5")
    assert code == EXIT_USAGE and "does not divide" in err


def test_verify_small_sweep_csv(capsys):
    code, out, _ = run(capsys, "verify", "--max-points", "5", "--max-q", "9", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows and all(row["passed"] == "True" for row in rows)
    assert "3/1/2/5" in {row["params"] for row in rows}


def test_reproduce_filtered(capsys):
    code, data = run_json(capsys, "reproduce-table1", "--r", "7", "--q", "4", "--examples", "--dual")
    assert code == EXIT_OK
    assert data["rows"] and all(row["status"] == "match" for row in data["rows"])


def test_reproduce_csv(capsys):
    code, out, _ = run(capsys, "reproduce-table1", "--r", "3", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {row["status"] for row in rows} == {"match"}


def test_bound61(capsys):
    code, data = run_json(capsys, "bound61", "--r", "3", "--N", "2", "--q", "5")
    assert code == EXIT_OK
    assert data["report"]["A_max"] == 1 and data["bound_sound"]
    assert data["eigenvector_identities"]["failures"] == []


def test_bound61_rejects_nonzero_v(capsys):
    code, _, _ = run(capsys, "bound61", "--r", "7", "--N", "2", "--q", "13", "--v", "1")
    assert code == EXIT_USAGE


def test_conjecture_scan_single_row(capsys):
    code, data = run_json(capsys, "conjecture-scan", "--r", "13", "--q", "5", "--v", "0")
    assert code == EXIT_OK
    (row,) = data["rows"]
    assert row["measured"] == row["conjectured"] == 9 and row["match"]
    assert data["mismatches"] == 0


def test_conjecture_scan_needs_q(capsys):
    code, _, _ = run(capsys, "conjecture-scan", "--r", "13")
    assert code == EXIT_USAGE


def test_csv_refused_for_single_results(capsys):
    code, _, err = run(capsys, "construct", "--r", "3", "--N", "2", "--q", "5", "--format", "csv")
    assert code == EXIT_USAGE and "csv" in err


def test_pretty_format(capsys):
    code, out, _ = run(capsys, "construct", "--r", "3", "--N", "2", "--q", "5", "--format", "pretty")
    assert code == EXIT_OK
    assert "certificate: \"lcd-zero-diagonal-2\"" in out


def test_output_is_byte_stable(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["analyze", "--r", "7", "--N", "3", "--q", "4", "--out", str(path)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    assert capsys.readouterr().out == ""


def test_failure_exit_code_on_mismatch(capsys, monkeypatch):
    import smallhull.cli as cli
    from smallhull.report import ReproductionRow

    real = cli.reproduce

    def broken(ref, budget, *, dual_distance=False):
        row = real(ref, budget, dual_distance=dual_distance)
        return ReproductionRow(row.ref, "mismatch", row.measured, row.certificate)

    monkeypatch.setattr(cli, "reproduce", broken)
    code, _, _ = run(capsys, "reproduce-table1", "--r", "3", "--q", "5")
    assert code == EXIT_FAIL


@pytest.mark.skipif(shutil.which("smallhull") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(
        ["smallhull", "construct", "--r", "3", "--N", "2", "--q", "5"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["n"] == 6
