import json

import pytest

from sinekernel.cli import main


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_det_csv_output(capsys):
    code, out, _ = run_cli(capsys, ["det", "--zeta", "1.0", "--lambda", "1"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "zeta,lambda,log_p,log_p_plus,log_p_minus"
    cells = lines[1].split(",")
    assert float(cells[2]) == pytest.approx(-5.655756845763938, rel=1e-12)


def test_det_variant_column(capsys):
    code, out, _ = run_cli(capsys, ["det", "--zeta", "1.0", "--lambda", "1", "--variant", "plus"])
    assert code == 0
    assert out.splitlines()[0] == "zeta,lambda,log_p_plus"


def test_det_rejects_nonpositive_zeta(capsys):
    code, _, err = run_cli(capsys, ["det", "--zeta", "0", "--lambda", "1"])
    assert code == 2
    assert "error" in err.lower()


def test_unknown_flag_is_usage_error(capsys):
    code, _, _ = run_cli(capsys, ["det", "--zeta", "1", "--lambda", "1", "--frobnicate"])
    assert code == 2


def test_missing_required_lambda(capsys):
    code, _, _ = run_cli(capsys, ["det", "--zeta", "1"])
    assert code == 2


def test_grid_syntax_errors(capsys):
    assert run_cli(capsys, ["det", "--zeta-grid", "1:2", "--lambda", "1"])[0] == 2
    assert run_cli(capsys, ["det", "--zeta-grid", "2:1:3", "--lambda", "1"])[0] == 2
    assert run_cli(capsys, ["det", "--zeta-grid", "1:2:0", "--lambda", "1"])[0] == 2


def test_asym_csv_header_contract(capsys):
    code, out, _ = run_cli(capsys, ["asym", "--quantity", "qanti", "--u-min", "8",
                                    "--u-max", "15", "--points", "3", "--terms", "2",
                                    "--format", "csv"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "u,numeric,series,abs_err,rel_err"
    assert len(lines) == 4


def test_asym_complex_cells(capsys):
    code, out, _ = run_cli(capsys, ["asym", "--quantity", "rsq", "--u-min", "9",
                                    "--u-max", "9", "--points", "1", "--terms", "3"])
    assert code == 0
    row = out.splitlines()[1]
    assert "j" in row  # complex numeric/series cells


def test_byte_identical_between_runs(capsys):
    argv = ["asym", "--quantity", "rsq", "--u-min", "8", "--u-max", "14",
            "--points", "3", "--terms", "3"]
    _, first, _ = run_cli(capsys, argv)
    _, second, _ = run_cli(capsys, argv)
    assert first == second


def test_resolvent_json(capsys):
    code, out, _ = run_cli(capsys, ["resolvent", "--zeta", "1.0", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["command"] == "resolvent"
    assert payload["rows"][0]["zeta"] == 1.0


def test_verify_sumrule_json_default(capsys):
    code, out, _ = run_cli(capsys, ["verify", "--suite", "sumrule", "--zeta", "1.0"])
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["passed"] is True
    assert payload["reports"][0]["suite"] == "sumrule"


def test_verify_csv_format(capsys):
    code, out, _ = run_cli(capsys, ["verify", "--suite", "lemma41", "--format", "csv"])
    assert code == 0
    assert out.splitlines()[0] == "suite,case,lhs,rhs,abs_err,rel_err,pass"


def test_verify_pmgap_reports_known_failure(capsys):
    # the empirical-a0 box at zeta = 2.5 sits just outside [0.48, 0.52]
    # (finite-size offset ~ ln(2)/2 / (2 pi zeta)); the suite must report it
    code, out, _ = run_cli(capsys, ["verify", "--suite", "pmgap"])
    assert code == 1
    payload = json.loads(out)
    failing = [c for r in payload["reports"] for c in r["cases"] if not c["pass"]]
    assert len(failing) == 1
    assert failing[0]["params"]["check"] == "empirical-a0"


def test_verify_unknown_suite(capsys):
    assert run_cli(capsys, ["verify", "--suite", "nonsense"])[0] == 2


def test_canon_row(capsys):
    code, out, _ = run_cli(capsys, ["canon", "--system", "2", "--z-re", "1",
                                    "--x-max", "1", "--steps", "150"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("system,z_re,z_im,x_max,steps,w11_re")
    assert lines[1].split(",")[4] == "150"


def test_canon_singularity_is_usage_error(capsys):
    code, _, err = run_cli(capsys, ["canon", "--system", "1", "--z-re", "0.5",
                                    "--x-max", "1"])
    assert code == 2
    assert "integration path" in err


def test_env_order_override(capsys, monkeypatch):
    monkeypatch.setenv("SINEKERNEL_ORDER", "52")
    code, out_env, _ = run_cli(capsys, ["det", "--zeta", "1.0", "--lambda", "1"])
    assert code == 0
    monkeypatch.setenv("SINEKERNEL_ORDER", "not-a-number")
    code, _, err = run_cli(capsys, ["det", "--zeta", "1.0", "--lambda", "1"])
    assert code == 2
    assert "SINEKERNEL_ORDER" in err


def test_flag_beats_env(capsys, monkeypatch):
    monkeypatch.setenv("SINEKERNEL_ORDER", "not-a-number")
    code, _, _ = run_cli(capsys, ["det", "--zeta", "1.0", "--lambda", "1", "--order", "48"])
    assert code == 0


def test_hamiltonian_rows_sorted(capsys):
    code, out, _ = run_cli(capsys, ["hamiltonian", "--x-grid", "0.5:1.5:3"])
    assert code == 0
    xs = [float(line.split(",")[0]) for line in out.splitlines()[1:]]
    assert xs == sorted(xs)


def test_crlf_line_endings(capsys):
    _, out, _ = run_cli(capsys, ["det", "--zeta", "1.0", "--lambda", "1"])
    assert "\r\n" in out
