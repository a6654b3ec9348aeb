"""Tests for the command-line interface."""

import json

import pytest
from typer.testing import CliRunner

from stochastic_euler.cli import app, load_report
from stochastic_euler.cli.app import parse_overrides
from stochastic_euler.exceptions import ConfigError

SMALL = ["--n-per-axis", "16", "--n-steps", "4", "--t-horizon", "0.02"]


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture(autouse=True)
def single_thread(monkeypatch):
    monkeypatch.setenv("SOLVER_THREADS", "1")


class TestParseOverrides:
    """Tests for parse_overrides."""

    def test_pairs(self):
        overrides = parse_overrides(["--n-steps", "8", "--p=6", "--zero_noise", "true"])

        assert overrides == {"n_steps": "8", "p": "6", "zero_noise": "true"}

    def test_missing_value(self):
        with pytest.raises(ConfigError, match="missing value"):
            parse_overrides(["--seed"])

    def test_stray_argument(self):
        with pytest.raises(ConfigError, match="unexpected argument"):
            parse_overrides(["16"])


class TestRunCommand:
    """Tests for ``solver run``."""

    def test_run_writes_directory(self, runner: CliRunner, tmp_path):
        out = tmp_path / "run"

        result = runner.invoke(app, ["run", "--out", str(out), "--seed", "5", *SMALL])

        assert result.exit_code == 0
        report = load_report(out)
        assert report.seed == 5
        assert report.config["n_per_axis"] == 16

    def test_config_file_and_override(self, runner: CliRunner, tmp_path):
        config = tmp_path / "run.cfg"
        config.write_text("n_per_axis = 16\nn_steps = 4\nt_horizon = 0.02\nk_max = 3\n")

        result = runner.invoke(
            app, ["run", "--out", str(tmp_path / "run"), "--config", str(config), "--k-max", "12"]
        )

        assert result.exit_code == 0
        assert load_report(tmp_path / "run").config["k_max"] == 12

    def test_no_convergence_exit_code(self, runner: CliRunner, tmp_path):
        result = runner.invoke(
            app, ["run", "--out", str(tmp_path / "run"), *SMALL, "--k-max", "1"]
        )

        assert result.exit_code == 2

    def test_bad_key_exit_code(self, runner: CliRunner, tmp_path):
        result = runner.invoke(app, ["run", "--out", str(tmp_path), "--resolution", "64"])

        assert result.exit_code == 1

    def test_missing_config_file(self, runner: CliRunner, tmp_path):
        result = runner.invoke(
            app, ["run", "--out", str(tmp_path), "--config", str(tmp_path / "nope.cfg")]
        )

        assert result.exit_code == 1


class TestVerifyAndCompare:
    """Tests for ``solver verify`` and ``solver compare``."""

    def test_verify(self, runner: CliRunner, tmp_path):
        out = tmp_path / "run"
        runner.invoke(app, ["run", "--out", str(out), *SMALL])

        # keep log lines out of the JSON on stdout
        result = runner.invoke(app, ["--log-level", "error", "verify", "--report", str(out)])

        assert result.exit_code == 0
        assert json.loads(result.stdout)["passed"] is True

    def test_verify_missing_directory(self, runner: CliRunner, tmp_path):
        result = runner.invoke(app, ["verify", "--report", str(tmp_path / "nope")])

        assert result.exit_code == 1

    def test_compare(self, runner: CliRunner, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        runner.invoke(app, ["run", "--out", str(a), *SMALL])
        runner.invoke(app, ["run", "--out", str(b), *SMALL])

        result = runner.invoke(app, ["--log-level", "error", "compare", str(a), str(b)])

        assert result.exit_code == 0
        assert json.loads(result.stdout)["max_l2"] == 0.0
