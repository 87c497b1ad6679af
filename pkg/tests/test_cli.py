"""End-to-end harness behavior: exit codes, determinism, file outputs."""

import json
import subprocess
import sys

import pytest

from mystint.cli import main

SMALL_INI = """\
[run]
k_grid = 0.5

[verify]
norm_k_grid = 0.3, 0.8
u_grid = -0.45,-0.45; 0.45,0.45
v_grid = -0.5, 0.5
invariance_n_max = 2

[moments]
moments_max = 3

[weights]
points = 20

[theta-chain]
v_grid = -0.5, 0.5
"""


@pytest.fixture()
def small_cfg(tmp_path):
    p = tmp_path / "small.ini"
    p.write_text(SMALL_INI)
    return str(p)


class TestExitCodes:
    def test_success_is_zero(self, small_cfg, tmp_path, capsys):
        rc = main(["--config", small_cfg, "--suite", "moments",
                   "--out", str(tmp_path / "m.csv"), "--no-figures"])
        assert rc == 0

    def test_invalid_modulus_is_two(self, capsys):
        rc = main(["--k", "1.5"])
        assert rc == 2
        assert "invalid configuration" in capsys.readouterr().err

    def test_invalid_config_file_is_two(self, tmp_path, capsys):
        p = tmp_path / "bad.ini"
        p.write_text("[moments]\nmoments_max = 99\n")
        rc = main(["--config", str(p), "--suite", "moments"])
        assert rc == 2

    def test_unreachable_tolerance_is_one(self, small_cfg, tmp_path, capsys):
        out = tmp_path / "v.csv"
        rc = main(["--config", small_cfg, "--suite", "verify",
                   "--tol", "1e-30", "--out", str(out), "--no-figures"])
        assert rc == 1
        # failures are reported in the table, not raised
        text = out.read_text()
        assert ",fail" in text
        assert "FAILED" in capsys.readouterr().out

    def test_unwritable_output_is_two(self, small_cfg, tmp_path, capsys):
        out = tmp_path / "no" / "such" / "dir" / "m.csv"
        rc = main(["--config", small_cfg, "--suite", "moments",
                   "--out", str(out), "--no-figures"])
        assert rc == 2
        err = capsys.readouterr().err
        assert "cannot write" in err
        assert "no" in err  # the failing path appears in the diagnostic


class TestReports:
    def test_stdout_csv(self, small_cfg, capsys):
        rc = main(["--config", small_cfg, "--suite", "moments"])
        captured = capsys.readouterr()
        assert rc == 0
        lines = captured.out.splitlines()
        assert lines[0] == "n,k,m_taylor,m_quadrature,rel_err"
        assert len(lines) == 1 + 4  # header + moments 0..3 at one modulus
        # progress lines go to stderr, not into the data stream
        assert "rows" in captured.err

    def test_json_format(self, small_cfg, capsys):
        rc = main(["--config", small_cfg, "--suite", "theta-chain", "--format", "json"])
        assert rc == 0
        rows = json.loads(capsys.readouterr().out)
        assert len(rows) == 2
        assert set(rows[0]) >= {"v", "k", "stage0_re", "stage4_im", "sncd_re", "max_dev"}

    def test_verify_schema(self, small_cfg, tmp_path, capsys):
        out = tmp_path / "v.csv"
        rc = main(["--config", small_cfg, "--suite", "verify",
                   "--out", str(out), "--no-figures"])
        assert rc == 0
        header = out.read_text().splitlines()[0]
        assert header == ("case_id,suite,k,u_re,u_im,lhs_re,lhs_im,"
                          "rhs_re,rhs_im,abs_err,rel_err,status")

    def test_all_suites_write_suffixed_files(self, small_cfg, tmp_path, capsys):
        out = tmp_path / "report.csv"
        rc = main(["--config", small_cfg, "--suite", "all",
                   "--out", str(out), "--no-figures"])
        assert rc == 0
        for suite in ("verify", "moments", "weights", "theta-chain"):
            assert (tmp_path / f"report_{suite}.csv").exists()

    def test_byte_identical_across_runs_and_jobs(self, small_cfg, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["--config", small_cfg, "--suite", "verify", "--out", str(a), "--no-figures"])
        main(["--config", small_cfg, "--suite", "verify", "--out", str(b),
              "--no-figures", "--jobs", "4"])
        assert a.read_bytes() == b.read_bytes()

    def test_no_color_keeps_output_plain(self, small_cfg, capsys, monkeypatch):
        monkeypatch.setenv("NO_COLOR", "1")
        main(["--config", small_cfg, "--suite", "moments"])
        captured = capsys.readouterr()
        assert "\x1b[" not in captured.out + captured.err


class TestFigures:
    def test_rendered_next_to_report_by_default(self, small_cfg, tmp_path, capsys):
        out = tmp_path / "chain.csv"
        rc = main(["--config", small_cfg, "--suite", "theta-chain", "--out", str(out)])
        assert rc == 0
        assert (tmp_path / "chain_chain.png").exists()

    def test_directory_override(self, small_cfg, tmp_path, capsys):
        out = tmp_path / "m.csv"
        figs = tmp_path / "figs"
        rc = main(["--config", small_cfg, "--suite", "moments", "--out", str(out),
                   "--figures-dir", str(figs)])
        assert rc == 0
        assert (figs / "m_moments.png").exists()

    def test_opt_out(self, small_cfg, tmp_path, capsys):
        out = tmp_path / "m.csv"
        rc = main(["--config", small_cfg, "--suite", "moments", "--out", str(out),
                   "--no-figures"])
        assert rc == 0
        assert not list(tmp_path.glob("*.png"))


def test_console_script_entry_point(tmp_path):
    cfg = tmp_path / "s.ini"
    cfg.write_text(SMALL_INI)
    proc = subprocess.run(
        [sys.executable, "-m", "mystint.cli", "--config", str(cfg),
         "--suite", "moments"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("n,k,m_taylor")


class TestEvaluationFailures:
    """A failed evaluation is a fail row in the report, never a crash."""

    def test_guarded_emits_nan_fail_rows(self):
        import math

        from mystint.cli import _guarded
        from mystint.errors import AccuracyError

        def boom():
            raise AccuracyError("budget exhausted", 0.0, 1.0)

        row = _guarded(boom, ("case_a",), "theorem1", 0.5, 0.25 + 0.5j)()
        assert row[0] == "case_a"
        assert row[1] == "theorem1"
        assert row[-1] == "fail"
        assert math.isnan(row[5]) and math.isnan(row[10])

        rows = _guarded(boom, ("one", "two"), "theta_chain", 0.5)()
        assert [r[0] for r in rows] == ["one", "two"]
        assert all(r[-1] == "fail" for r in rows)

    def test_failed_moment_becomes_fail_row(self, small_cfg, tmp_path, capsys,
                                            monkeypatch):
        import mystint.cli as cli
        from mystint.errors import AccuracyError

        def boom(n, k, cfg=None):
            raise AccuracyError("budget exhausted", 0.0, 1.0)

        monkeypatch.setattr(cli, "moment_quadrature", boom)
        out = tmp_path / "m.csv"
        rc = cli.main(["--config", small_cfg, "--suite", "moments",
                       "--out", str(out), "--no-figures"])
        assert rc == 1
        body = out.read_text().splitlines()[1:]
        assert body and all("nan" in line for line in body)
