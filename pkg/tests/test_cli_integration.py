"""Integration tests running CLI commands end to end."""

import json
import logging
import os
from unittest.mock import Mock, patch

import pytest
from typer.testing import CliRunner

from qrational_explorer.cli import app


@pytest.fixture
def runner():
    """CLI runner with the QRAT_* environment cleared."""
    env = {k: v for k, v in os.environ.items() if not k.startswith("QRAT_")}
    with patch.dict(os.environ, env, clear=True):
        yield CliRunner()


@pytest.mark.integration
class TestCLIIntegration:
    """Test CLI commands together with the library and the file system."""

    def test_verify_all_with_small_bounds(self, runner):
        """Test that every suite passes and is listed in the JSON report."""
        result = runner.invoke(
            app,
            ["verify", "--suite", "all", "--max-den", "6", "--max-sum", "5"]
            + ["--words", "30", "--format", "json"],
        )

        reports = json.loads(result.stdout)
        assert result.exit_code == 0
        assert [r["suite"] for r in reports] == [
            "routes",
            "closure-oracle",
            "transposes",
            "arithmetic-flat",
            "palin",
            "trace",
            "circular",
            "jones",
            "iota",
        ]
        assert all(r["failures"] == [] for r in reports)

    def test_scan_is_independent_of_workers(self, runner, tmp_path):
        """Test that --jobs 1 and --jobs 2 write byte-identical files."""
        outputs = []
        for jobs in ("1", "2"):
            out = tmp_path / f"iota_{jobs}.jsonl"
            result = runner.invoke(
                app,
                ["scan", "--kind", "iota", "--max-r", "12", "--jobs", jobs]
                + ["--out", str(out), "--no-progress"],
            )
            assert result.exit_code == 0
            outputs.append(out.read_bytes())

        assert outputs[0] == outputs[1]

    def test_scan_append(self, runner, tmp_path):
        """Test that --append keeps earlier records."""
        out = tmp_path / "oguz.jsonl"
        args = ["scan", "--kind", "oguz", "--max-sum", "4", "--out", str(out)]

        runner.invoke(app, [*args, "--no-progress"])
        runner.invoke(app, [*args, "--no-progress", "--append"])

        assert len(out.read_text().splitlines()) == 14

    def test_scan_records_match_iota_command(self, runner, tmp_path):
        """Test that the scan and the iota command agree on I_{15/4}."""
        out = tmp_path / "iota.jsonl"
        runner.invoke(
            app,
            ["scan", "--kind", "iota", "--max-r", "15", "--out", str(out)]
            + ["--no-progress"],
        )
        record = next(
            json.loads(line)
            for line in out.read_text().splitlines()
            if json.loads(line)["alpha"] == "15/4"
        )

        result = runner.invoke(app, ["iota", "--frac", "15/4", "--format", "json"])

        assert json.loads(result.stdout)["I"] == record["I"]
        assert record["exception"] == "staircase"

    def test_scan_summary_json(self, runner, tmp_path):
        """Test the JSON summary of an oguz scan."""
        out = tmp_path / "oguz.jsonl"

        result = runner.invoke(
            app,
            ["scan", "--kind", "oguz", "--max-sum", "8", "--out", str(out)]
            + ["--no-progress", "--format", "json"],
        )

        summary = json.loads(result.stdout)
        assert result.exit_code == 0
        assert summary["kind"] == "oguz"
        assert summary["violations"] == []
        assert summary["output"] == str(out)

    @patch("qrational_explorer.cli.setup_logger")
    def test_log_level_option(self, mock_setup_logger, runner):
        """Test that --log-level reaches the command logger."""
        mock_logger = Mock(spec=logging.Logger)
        mock_setup_logger.return_value = mock_logger

        result = runner.invoke(app, ["jones", "--frac", "5/2", "--log-level", "DEBUG"])

        assert result.exit_code == 0
        mock_setup_logger.assert_called_once_with("qrat_explorer", level=logging.DEBUG)
        mock_logger.debug.assert_called()

    @patch("qrational_explorer.cli.setup_logger")
    def test_log_level_from_environment(self, mock_setup_logger, runner):
        """Test that QRAT_LOG_LEVEL is the default level."""
        mock_setup_logger.return_value = Mock(spec=logging.Logger)

        with patch.dict(os.environ, {"QRAT_LOG_LEVEL": "INFO"}):
            runner.invoke(app, ["jones", "--frac", "5/2"])

        mock_setup_logger.assert_called_once_with("qrat_explorer", level=logging.INFO)

    def test_errors_are_logged(self, runner, caplog):
        """Test that a rejected input is logged as an error."""
        with caplog.at_level(logging.ERROR):
            result = runner.invoke(app, ["jones", "--frac", "1/2"])

        assert result.exit_code == 2
        assert "DomainError" in caplog.text

    def test_unexpected_errors_exit_one(self, runner):
        """Test the catch-all error path."""
        with patch("qrational_explorer.cli.jones", side_effect=RuntimeError("boom")):
            result = runner.invoke(app, ["jones", "--frac", "5/2"])

        assert result.exit_code == 1
        assert "Unexpected error: boom" in result.stderr
