"""
Integration tests for qcarleson CLI commands.

Tests the CLI commands using typer's CliRunner to simulate real command invocations.
"""

import json
import math

import pytest
from typer.testing import CliRunner

from qcarleson import __version__
from qcarleson.cli import app
from qcarleson.core.measures import Atomic, measure_to_json


runner = CliRunner()


def _json_tail(text: str):
    """The JSON document printed last on stdout."""
    lines = text.splitlines()
    start = len(lines) - 1 - lines[::-1].index("{")
    return json.loads("\n".join(lines[start:]))


@pytest.fixture
def workspace(config_file, change_cwd):
    """A working directory holding the small test config."""
    return change_cwd


class TestMainApp:
    """Tests for the main CLI application."""

    def test_version_flag(self):
        result = runner.invoke(app, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.stdout

    def test_help_lists_commands(self):
        result = runner.invoke(app, ["--help"])
        assert result.exit_code == 0
        for name in ("verify", "constants", "eval", "norm", "geometry", "carleson-check", "counterexample"):
            assert name in result.stdout

    def test_no_args_shows_help(self):
        result = runner.invoke(app, [])
        assert "Usage" in result.output


class TestConfigCommands:
    """Tests for config subcommands."""

    def test_path(self, change_cwd):
        result = runner.invoke(app, ["config", "path"])
        assert result.exit_code == 0
        assert ".qcarleson" in result.stdout

    def test_set_get_unset(self, change_cwd):
        result = runner.invoke(app, ["config", "set", "grids.n_i", "400"])
        assert result.exit_code == 0
        assert (change_cwd / ".qcarleson" / "config.yaml").exists()

        result = runner.invoke(app, ["config", "get", "grids.n_i"])
        assert result.exit_code == 0
        assert "400" in result.output

        assert runner.invoke(app, ["config", "unset", "grids.n_i"]).exit_code == 0
        assert runner.invoke(app, ["config", "unset", "grids.n_i"]).exit_code == 1

    def test_get_missing(self, change_cwd):
        assert runner.invoke(app, ["config", "get", "grids.nothing"]).exit_code == 1

    def test_show_section(self, workspace):
        result = runner.invoke(app, ["config", "show", "monte_carlo"])
        assert result.exit_code == 0
        assert "samples" in result.output

    def test_bad_yaml(self, change_cwd):
        path = change_cwd / ".qcarleson" / "config.yaml"
        path.parent.mkdir(parents=True)
        path.write_text("grids: [unclosed\n")
        assert runner.invoke(app, ["config", "get", "grids.n_i"]).exit_code == 2
        assert runner.invoke(app, ["verify", "--only", "algebra"]).exit_code == 2


class TestEvalAndGeometry:
    """Tests for eval, norm and geometry."""

    def test_eval_kernel_at_origin(self, workspace):
        result = runner.invoke(app, ["eval", "--kernel", "K", "--w", "0,0.5,0,0", "--q", "0,0,0,0", "--p", "2"])
        assert result.exit_code == 0
        data = _json_tail(result.stdout)
        assert data["abs"] == pytest.approx(1.0)
        assert data["abs_p"] == pytest.approx(1.0)

    def test_eval_series(self, workspace):
        (workspace / "f.json").write_text(json.dumps({"coeffs": [[1, 0, 0, 0], [2, 0, 0, 0]]}))
        result = runner.invoke(app, ["eval", "--series", "f.json", "--q", "0.25"])
        assert result.exit_code == 0
        assert _json_tail(result.stdout)["value"] == pytest.approx([1.5, 0.0, 0.0, 0.0])

    def test_eval_needs_one_function(self, workspace):
        assert runner.invoke(app, ["eval", "--q", "0,0,0,0"]).exit_code == 2

    def test_eval_bad_point(self, workspace):
        assert runner.invoke(app, ["eval", "--kernel", "K", "--w", "0", "--q", "1,2"]).exit_code == 2

    def test_norm_reports_closed_form(self, workspace):
        result = runner.invoke(app, ["norm", "--space", "hardy", "--p", "2", "--kernel", "K",
                                     "--w", "0,0.5,0,0", "--normalized", "--grid", "4,256,64"])
        assert result.exit_code == 0
        data = _json_tail(result.stdout)
        assert data["closed_form"] == pytest.approx(math.sqrt(4.0 / 3.0))

    def test_norm_bad_space(self, workspace):
        assert runner.invoke(app, ["norm", "--space", "dirichlet", "--p", "2", "--kernel", "K",
                                   "--w", "0"]).exit_code == 2

    def test_tube_volume_at_origin(self, workspace):
        result = runner.invoke(app, ["geometry", "--region", "tube", "--alpha", "0,0,0,0", "--r", "0.5"])
        assert result.exit_code == 0
        assert _json_tail(result.stdout)["eta_volume"] == pytest.approx(0.0625, rel=1e-8)

    def test_unknown_region(self, workspace):
        assert runner.invoke(app, ["geometry", "--region", "cube", "--alpha", "0", "--r", "0.5"]).exit_code == 2


class TestCarlesonCommands:
    """Tests for carleson-check and counterexample."""

    @pytest.fixture
    def measure_file(self, workspace):
        path = workspace / "mu.json"
        path.write_text(json.dumps(measure_to_json(Atomic([[0.0, 0.9, 0.0, 0.0]], [1.0]))))
        return path

    def test_slice_box(self, measure_file):
        result = runner.invoke(app, ["carleson-check", "--measure", str(measure_file), "--condition", "slice-box"])
        assert result.exit_code == 0
        data = _json_tail(result.stdout)
        assert data["sup_ratio"] == pytest.approx(4.0)
        assert data["witness"]["kind"] == "carleson_box"

    def test_ball_needs_beta(self, measure_file):
        result = runner.invoke(app, ["carleson-check", "--measure", str(measure_file), "--condition", "ball"])
        assert result.exit_code == 2

    def test_unknown_condition(self, measure_file):
        result = runner.invoke(app, ["carleson-check", "--measure", str(measure_file), "--condition", "strip"])
        assert result.exit_code == 2

    def test_missing_measure_file(self, workspace):
        result = runner.invoke(app, ["carleson-check", "--measure", "absent.json", "--condition", "tube"])
        assert result.exit_code == 2

    def test_counterexample_writes_measure(self, workspace):
        out = workspace / "build" / "tubes.json"
        result = runner.invoke(app, ["counterexample", "--tubes", "4", "--out", str(out)])
        assert result.exit_code == 0
        data = json.loads(out.read_text())
        assert data["kind"] == "tube_counterexample"
        assert len(data["centers"]) == 4

    def test_counterexample_bad_eps(self, workspace):
        assert runner.invoke(app, ["counterexample", "--eps", "5"]).exit_code == 2

    def test_counterexample_grid_exhausted(self, workspace):
        assert runner.invoke(app, ["counterexample", "--tubes", "40"]).exit_code == 1


class TestVerifyCommand:
    """Tests for verify and constants."""

    def test_verify_selection(self, workspace):
        result = runner.invoke(app, ["verify", "--only", "algebra", "--out", "reports"])
        assert result.exit_code == 0
        report = json.loads((workspace / "reports" / "report.json").read_text())
        assert report["seed"] == 7
        assert [c["id"] for c in report["checks"]] == ["algebra"]
        assert report["checks"][0]["status"] == "pass"
        assert (workspace / "reports" / "checks.csv").exists()
        assert (workspace / "reports" / "timings.json").exists()

    def test_verify_seed_override(self, workspace):
        result = runner.invoke(app, ["verify", "--only", "algebra", "--seed", "3", "--out", "reports"])
        assert result.exit_code == 0
        assert json.loads((workspace / "reports" / "report.json").read_text())["seed"] == 3

    def test_verify_unknown_check(self, workspace):
        result = runner.invoke(app, ["verify", "--only", "algebra,unknown"])
        assert result.exit_code == 2

    def test_verify_bad_workers(self, workspace):
        assert runner.invoke(app, ["verify", "--only", "algebra", "--workers", "0"]).exit_code == 2

    def test_constants_bad_radius(self, workspace):
        assert runner.invoke(app, ["constants", "--r", "1.5"]).exit_code == 1

    @pytest.mark.slow
    def test_constants_csv(self, workspace):
        result = runner.invoke(app, ["constants", "--samples", "10000", "--out", "consts"])
        assert result.exit_code == 0
        header = (workspace / "consts" / "constants.csv").read_text().splitlines()[0]
        assert header == "constant,alpha_w,alpha_x,alpha_y,alpha_z,r,value"
