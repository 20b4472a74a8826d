"""End-to-end tests for the CLI."""

from __future__ import annotations

import json

import pytest

from kostin.cli import main

FREE = "time.t_end = 5\n"

ESCAPING = """\
pipeline = pde
initial.q = -2
initial.qdot = 20
time.t_end = 1
grid.x_min = -10
grid.x_max = 10
grid.n_points = 256
"""


@pytest.fixture
def write_scenario(tmp_path):
    def write(text: str, name: str = "scenario.kostin"):
        path = tmp_path / name
        path.write_text(text)
        return path

    return write


class TestCLIBasic:
    """Basic CLI functionality tests."""

    def test_help(self, capsys):
        """Test --help output."""
        with pytest.raises(SystemExit) as exc:
            main(["--help"])
        assert exc.value.code == 0
        captured = capsys.readouterr()
        assert "kostin" in captured.out
        assert "Kostin" in captured.out

    def test_version(self, capsys):
        """Test --version output."""
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
        captured = capsys.readouterr()
        assert "0.1.0" in captured.out

    def test_missing_command(self):
        """Test error when no subcommand is given."""
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code != 0

    def test_file_not_found(self, tmp_path, capsys):
        """Test error when the scenario file doesn't exist."""
        result = main(["run", str(tmp_path / "missing.kostin")])
        assert result == 2
        captured = capsys.readouterr()
        assert "File not found" in captured.err


class TestCLIValidate:
    """Tests for the validate command."""

    def test_valid(self, write_scenario, capsys):
        path = write_scenario(FREE)
        assert main(["validate", str(path)]) == 0
        captured = capsys.readouterr()
        assert "valid moments scenario" in captured.out

    def test_invalid_reports_location(self, write_scenario, capsys):
        path = write_scenario("time.t_end = 5\ninitial.q = 0\ninitial.a = -1\n")
        assert main(["validate", str(path)]) == 2
        captured = capsys.readouterr()
        assert "initial.a line 3" in captured.err

    def test_warning_keeps_valid(self, write_scenario, capsys):
        path = write_scenario(FREE + "wigner.level = 0.5\n")
        assert main(["validate", str(path)]) == 0
        captured = capsys.readouterr()
        assert "warning: wigner.level line 2: ignored by the moments pipeline" in captured.err
        assert "valid moments scenario" in captured.out

    def test_reports_every_issue(self, write_scenario, capsys):
        path = write_scenario("time.t_end = 5\nparams.gamma = 1\ninitial.a = x\n")
        assert main(["validate", str(path)]) == 2
        err = capsys.readouterr().err
        assert "unknown key" in err
        assert "not a number" in err


class TestCLIRun:
    """Tests for the run command."""

    def test_run_writes_report(self, write_scenario, tmp_path, capsys):
        path = write_scenario(FREE)
        out = tmp_path / "out"

        assert main(["run", str(path), "--out", str(out)]) == 0

        captured = capsys.readouterr()
        assert captured.out.startswith("passed:")
        report = json.loads((out / "report.json").read_text())
        assert report["status"] == "passed"
        assert (out / "moments.csv").exists()

    def test_output_dir_from_scenario(self, write_scenario, tmp_path):
        target = tmp_path / "from-file"
        path = write_scenario(FREE + f"output.dir = {target}\n")

        assert main(["run", str(path)]) == 0
        assert (target / "report.json").exists()

    def test_json_format(self, write_scenario, tmp_path):
        path = write_scenario(FREE)
        out = tmp_path / "out"

        assert main(["run", str(path), "--out", str(out), "--format", "json"]) == 0
        assert (out / "moments.json").exists()
        assert not (out / "moments.csv").exists()

    def test_failed_check(self, write_scenario, tmp_path, capsys):
        path = write_scenario(FREE)
        out = tmp_path / "out"

        assert main(["run", str(path), "--out", str(out), "--tol-scale", "1e-30"]) == 1

        captured = capsys.readouterr()
        assert "Check failed: conservative_oracle" in captured.err
        assert captured.out.startswith("failed:")

    def test_bad_tol_scale(self, write_scenario, capsys):
        path = write_scenario(FREE)
        assert main(["run", str(path), "--tol-scale", "0"]) == 2
        assert "Config error" in capsys.readouterr().err

    def test_config_error(self, write_scenario, capsys):
        path = write_scenario("initial.a = 1\n")
        assert main(["run", str(path)]) == 2
        captured = capsys.readouterr()
        assert "Config error: time.t_end" in captured.err

    def test_numerical_error(self, write_scenario, tmp_path, capsys):
        path = write_scenario(ESCAPING)
        out = tmp_path / "out"

        assert main(["run", str(path), "--out", str(out)]) == 3

        captured = capsys.readouterr()
        assert "Numerical error" in captured.err
        report = json.loads((out / "report.json").read_text())
        assert report["error"]["type"] == "PacketEscapedError"

    def test_verbose_run(self, write_scenario, tmp_path, capsys):
        path = write_scenario(FREE)
        assert main(["-v", "run", str(path), "--out", str(tmp_path / "out")]) == 0


class TestCLISweep:
    """Tests for the sweep command."""

    def test_sweep(self, write_scenario, tmp_path, capsys):
        path = write_scenario(FREE)
        out = tmp_path / "sweep"

        result = main(
            ["sweep", str(path), "--out", str(out), "--vary", "params.nu=0.5:1.0:2"]
        )

        assert result == 0
        captured = capsys.readouterr()
        assert "params.nu=0.5: passed" in captured.out
        assert "params.nu=1: passed" in captured.out
        assert (out / "sweep.json").exists()
        assert (out / "params.nu=0.5" / "report.json").exists()
        assert (out / "params.nu=1" / "report.json").exists()

    def test_bad_vary(self, write_scenario, capsys):
        path = write_scenario(FREE)
        assert main(["sweep", str(path), "--vary", "params.nu=1:2"]) == 2
        assert "--vary" in capsys.readouterr().err

    def test_unknown_key(self, write_scenario, tmp_path, capsys):
        path = write_scenario(FREE)
        result = main(
            ["sweep", str(path), "--out", str(tmp_path / "o"), "--vary", "params.g=1:2:2"]
        )
        assert result == 2
        assert "unknown key" in capsys.readouterr().err

    def test_worst_status_wins(self, write_scenario, tmp_path):
        path = write_scenario(ESCAPING)
        result = main(
            [
                "sweep",
                str(path),
                "--out",
                str(tmp_path / "o"),
                "--vary",
                "initial.qdot=0:20:2",
            ]
        )
        assert result == 3
