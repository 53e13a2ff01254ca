import json

import pytest

from icoswitch.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_list_prints_all_scenarios(capsys):
    code, out, _ = run_cli(capsys, "list")
    assert code == 0
    lines = [line for line in out.splitlines() if line.strip()]
    assert len(lines) == 11


def test_unknown_scenario_exits_1(capsys):
    code, _, err = run_cli(capsys, "scenario", "not-a-scenario")
    assert code == 1
    assert "not-a-scenario" in err or "invalid" in err


def test_bad_grid_flag_exits_1(capsys):
    code, _, err = run_cli(capsys, "scenario", "depol-single", "--grid", "theta=0.1:2.0")
    assert code == 1
    assert "grid" in err


def test_unknown_parameter_exits_1(capsys):
    code, _, err = run_cli(capsys, "scenario", "depol-single", "--grid", "zeta=0.5")
    assert code == 1
    assert "zeta" in err


def test_csv_row_count_and_header(capsys):
    code, out, _ = run_cli(
        capsys,
        "scenario",
        "depol-single",
        "--dim",
        "2",
        "--grid",
        "theta=0.5:2.5:3",
        "--grid",
        "p=0.1:0.9:2",
        "--threads",
        "1",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 1 + 3 * 2
    header = lines[0].split(",")
    for column in ("theta", "p", "q_ico", "q_dco", "ratio", "r01_dev"):
        assert column in header


def test_csv_determinism(capsys):
    argv = ("scenario", "ampdamp-single", "--grid", "theta=0.2:3.0:5", "--threads", "2")
    _, first, _ = run_cli(capsys, *argv)
    _, second, _ = run_cli(capsys, *argv)
    assert first == second


def test_json_output_shape(capsys):
    code, out, _ = run_cli(
        capsys,
        "scenario",
        "dephase-single",
        "--grid",
        "theta=1.0",
        "--format",
        "json",
        "--seed",
        "3",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["metadata"]["scenario"] == "dephase-single"
    assert payload["metadata"]["seed"] == 3
    assert len(payload["rows"]) == 1
    assert "re_r01" in payload["rows"][0]


def test_output_file(tmp_path, capsys):
    out_path = tmp_path / "sweep.csv"
    code, _, _ = run_cli(
        capsys,
        "scenario",
        "copies-D",
        "--copies",
        "3",
        "--grid",
        "theta=0.9",
        "--grid",
        "p=0.01",
        "--out",
        str(out_path),
    )
    assert code == 0
    text = out_path.read_text()
    assert text.splitlines()[0].startswith("theta,p,")


def test_unwritable_output_exits_1(tmp_path, capsys):
    code, _, err = run_cli(
        capsys,
        "scenario",
        "copies-D",
        "--grid",
        "theta=0.9",
        "--out",
        str(tmp_path / "missing-dir" / "x.csv"),
    )
    assert code == 1
    assert "cannot write" in err


def test_axis_flag_routes_to_scenario(capsys):
    code, out, _ = run_cli(
        capsys,
        "scenario",
        "dephase-single",
        "--axis",
        "1.2,0.4",
        "--grid",
        "theta=1.0",
    )
    assert code == 0
    code, _, err = run_cli(capsys, "scenario", "copies-D", "--axis", "1.2,0.4", "--grid", "theta=1.0")
    assert code == 1


def test_dim_and_two_j_conflict(capsys):
    code, _, err = run_cli(
        capsys, "scenario", "depol-single", "--dim", "3", "--two-j", "2", "--grid", "theta=1.0"
    )
    assert code == 1
    assert "mutually exclusive" in err


def test_verify_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "--seed", "7", "--draws", "3")
    assert code == 0
    assert "verification: PASS" in out
    assert out.count("PASS") >= 23  # 11 oracle + 11 invariant lines + summary
