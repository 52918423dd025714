import csv
import io
from pathlib import Path

import pytest

from trackmech.cli import main

ROOT = Path(__file__).resolve().parents[1]
PAPER_CFG = ROOT / "configs" / "paper.cfg"


def test_table3_exit_zero(capsys):
    assert main(["table3"]) == 0
    out = capsys.readouterr().out
    assert "K_p discrepancy" in out and "2.882" in out
    assert "FAIL" not in out


def test_table3_csv(capsys):
    assert main(["table3", "--format", "csv"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["quantity", "printed", "computed", "rel_delta", "tolerance", "status"]
    assert {r[0] for r in rows[1:8]} == {"R_in", "R_g", "F", "a", "z_o", "R_b", "R_c"}


def test_table3_verbatim_mode_fails(capsys):
    assert main(["table3", "--compaction-mode", "verbatim-eq8"]) == 1


def test_evaluate_text(capsys):
    assert main(["evaluate", "--config", str(PAPER_CFG)]) == 0
    out = capsys.readouterr().out
    assert "F = 3597.94 N" in out
    assert "[bekker-classic]" in out and "[override]" in out


def test_evaluate_csv_full_precision(tmp_path):
    dest = tmp_path / "r.csv"
    assert main(["evaluate", "--config", str(PAPER_CFG), "--format", "csv", "--output", str(dest)]) == 0
    raw = dest.read_bytes()
    assert b"\r" not in raw
    rows = list(csv.DictReader(io.StringIO(raw.decode())))
    assert float(rows[0]["F"]) == pytest.approx(3597.9375126557006, rel=1e-15)


def test_evaluate_kp_flag(capsys):
    assert main(["evaluate", "--config", str(PAPER_CFG), "--kp", "2.5", "--format", "csv"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert float(rows[0]["K_p"]) == 2.5


def test_check_short_reach_fails(tmp_path, capsys):
    cfg = tmp_path / "short.cfg"
    cfg.write_text(PAPER_CFG.read_text().replace("robot_reach = 2.3 m", "robot_reach = 1.0 m"))
    assert main(["check", "--config", str(cfg)]) == 1
    out = capsys.readouterr().out
    assert "failing: reach_A, reach_B" in out


def test_check_reference_config_passes(capsys):
    assert main(["check", "--config", str(PAPER_CFG)]) == 0


def test_malformed_config_exit_2(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("[terrain\nn = 1\n")
    assert main(["evaluate", "--config", str(cfg)]) == 2
    assert "line 1" in capsys.readouterr().err


def test_missing_config_exit_2(capsys):
    assert main(["evaluate"]) == 2
    assert main(["evaluate", "--config", "/nonexistent.cfg"]) == 2


def test_numerical_error_exit_3(monkeypatch, capsys):
    import trackmech.resistance as res

    monkeypatch.setattr(res, "QUAD_MAX_DEPTH", 1)
    monkeypatch.setattr(res, "QUAD_ABS_TOL", 1e-300)
    assert main(["evaluate", "--config", str(PAPER_CFG), "--compaction-mode", "verbatim-eq8"]) == 3


def test_sweep_dump(tmp_path, capsys):
    dump = tmp_path / "rows.csv"
    cfg = tmp_path / "s.cfg"
    cfg.write_text(
        PAPER_CFG.read_text() + f"\n[sweep]\nb = 0.12 : 0.3 : 0.06\nl = 0.8 m : 1.2 m : 0.2 m\ndump = {dump}\n"
    )
    assert main(["sweep", "--config", str(cfg)]) == 0
    out = capsys.readouterr().out
    assert "grid points: 12" in out and "best:" in out
    lines = dump.read_text().splitlines()
    assert lines[0] == "b,l,B,v,m,i,z_o,R_in,R_b,R_c,R_g,F,drawbar_pull,a,feasible,failed_check,objective"
    assert len(lines) == 13


def test_sweep_infeasible_exit_1(tmp_path, capsys):
    cfg = tmp_path / "s.cfg"
    cfg.write_text(PAPER_CFG.read_text() + "\n[sweep]\nm = 10000 kg : 100000 kg : 30000 kg\n")
    assert main(["sweep", "--config", str(cfg)]) == 1
    assert "no feasible configuration" in capsys.readouterr().out


def test_verbose_echoes_canonical(capsys):
    assert main(["evaluate", "--config", str(PAPER_CFG), "--verbose"]) == 0
    err = capsys.readouterr().err
    assert "[terrain]" in err and "kp_override = 1.7" in err
