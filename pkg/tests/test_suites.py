"""Tests for the verification suites and their runner."""

import logging
from unittest.mock import Mock, patch

import pytest

from qrational_explorer.algebra.continued_fractions import Fraction
from qrational_explorer.config import Settings
from qrational_explorer.models import Gen, SuiteName, SuiteReport
from qrational_explorer.verification.suites import (
    GOLDEN_IOTA,
    MAX_FAILURES,
    SUITES,
    SuiteBounds,
    VerificationRunner,
    _Recorder,
    btuples,
    random_words,
)

SMALL = SuiteBounds(max_den=8, max_sum=6, words=40)


@pytest.fixture
def mock_logger():
    """Create mock logger for testing."""
    return Mock(spec=logging.Logger)


class TestHelpers:
    """Test the input generators shared by the suites."""

    def test_btuples(self):
        """Test ends >= 0, interior > 0 and sum <= 2."""
        assert btuples(2) == [
            (0,),
            (0, 0),
            (0, 1),
            (0, 1, 0),
            (0, 1, 1),
            (0, 1, 1, 0),
            (0, 2),
            (0, 2, 0),
            (1,),
            (1, 0),
            (1, 1),
            (1, 1, 0),
            (2,),
            (2, 0),
        ]

    def test_random_words_are_seeded(self):
        """Test that a seed fixes the words."""
        assert random_words(20, 7) == random_words(20, 7)
        assert random_words(20, 7) != random_words(20, 8)

    def test_random_words_shape(self):
        """Test exponent ranges and the S rule."""
        for word in random_words(50, 3, max_length=5):
            assert len(word) <= 5
            for gen, exp in word:
                if gen is Gen.S:
                    assert exp == 1
                else:
                    assert 1 <= abs(exp) <= 5

    def test_recorder_caps_failures(self):
        """Test that at most MAX_FAILURES counterexamples are kept."""
        rec = _Recorder("demo")
        for i in range(MAX_FAILURES + 10):
            rec.check(False, "always fails", i=i)

        assert rec.report.checked == MAX_FAILURES + 10
        assert len(rec.report.failures) == MAX_FAILURES
        assert rec.report.failures[0] == {"law": "always fails", "i": 0}

    def test_bounds_from_settings(self):
        """Test that settings fill the seed and caps, overrides win."""
        settings = Settings.for_testing(
            use_env_vars=False, random_seed=5, trace_iteration_cap=9
        )

        bounds = SuiteBounds.from_settings(settings, max_den=12, words=None)

        assert bounds.seed == 5
        assert bounds.trace_rounds == 9
        assert bounds.max_den == 12
        assert bounds.words == SuiteBounds().words

    def test_default_bounds(self):
        """Test that a bare verify runs 500 words and tuple sums up to 12."""
        bounds = SuiteBounds()

        assert bounds.words == 500
        assert bounds.max_sum == 12
        assert bounds.max_den == 30

    def test_golden_values_are_classified(self):
        """Test the golden table entries."""
        assert GOLDEN_IOTA[Fraction(12, 5)].coefficient_vector() == [1, 0, 0, 1]
        assert GOLDEN_IOTA[Fraction(5, 2)].is_zero()


class TestSuites:
    """Run every suite with small bounds."""

    @pytest.mark.parametrize("name", list(SUITES))
    def test_suite_passes(self, name):
        """Test that the suite finds no counterexample."""
        report = SUITES[name](SMALL)

        assert report.suite == name.value
        assert report.checked > 0
        assert report.failures == []

    @pytest.mark.slow
    @pytest.mark.parametrize("name", list(SUITES))
    def test_suite_passes_at_desk_scale(self, name):
        """Test the suites with denominators up to 40, sums up to 12, 500 words."""
        max_den = 60 if name in (SuiteName.ARITHMETIC_FLAT, SuiteName.PALIN) else 40
        bounds = SuiteBounds(max_den=max_den, max_sum=12, words=500)

        assert SUITES[name](bounds).passed


class TestVerificationRunner:
    """Test cases for VerificationRunner."""

    def test_init_without_logger(self):
        """Test the default logger name."""
        runner = VerificationRunner()

        assert runner._logger.name == "verification"

    def test_single_suite(self, mock_logger):
        """Test running one suite."""
        reports = VerificationRunner(mock_logger).run(SuiteName.PALIN, SMALL)

        assert [r.suite for r in reports] == ["palin"]
        assert mock_logger.info.call_count == 1
        mock_logger.log.assert_called_once()

    def test_all_runs_every_suite(self, mock_logger):
        """Test that 'all' runs the suites in declaration order."""
        fake = {
            name: Mock(return_value=SuiteReport(suite=name.value)) for name in SUITES
        }

        with patch.dict(SUITES, fake):
            reports = VerificationRunner(mock_logger).run(SuiteName.ALL, SMALL)

        assert [r.suite for r in reports] == [name.value for name in SUITES]
        for suite in fake.values():
            suite.assert_called_once_with(SMALL)

    def test_failure_logs_a_warning(self, mock_logger):
        """Test that a failing suite is logged at WARNING."""
        failing = SuiteReport(suite="palin", checked=1, failures=[{"law": "x"}])

        with patch.dict(SUITES, {SuiteName.PALIN: Mock(return_value=failing)}):
            reports = VerificationRunner(mock_logger).run(SuiteName.PALIN, SMALL)

        assert not reports[0].passed
        level, message = mock_logger.log.call_args[0]
        assert level == logging.WARNING
        assert "1 failures" in message
