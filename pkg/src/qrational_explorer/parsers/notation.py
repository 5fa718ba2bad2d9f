"""Parser for the text notation accepted on the command line."""

import json
import logging
import re
from typing import Optional

from ..algebra.continued_fractions import Fraction
from ..algebra.laurent import LaurentPoly
from ..algebra.qmod import GenWord, alternating_word, negative_word, normalize_word
from ..combinatorics.quivers import Quiver, circular_fence, fence_quiver, flat_quiver
from ..exceptions import DomainError, NotationError
from ..models import Gen
from ..utils.logging import setup_logger

_TOKEN_RE = re.compile(r"^([RLS])(?:\^(-?\d+))?$")
_ARROW_RE = re.compile(r"^\s*(\d+)\s*>\s*(\d+)\s*$")


class NotationParser:
    """Parser for fractions, generator words, quivers and polynomials."""

    def __init__(self, logger: Optional[logging.Logger] = None):
        """Initialize the notation parser.

        Args:
            logger: Optional logger instance. If None, creates a default logger.
        """
        self._logger = logger or setup_logger("notation_parser", level=logging.INFO)

    def _fail(self, message: str, cause: Optional[Exception] = None) -> NotationError:
        self._logger.error(message)
        error = NotationError(message)
        if cause is not None:
            error.__cause__ = cause
        return error

    def parse_fraction(self, text: str) -> Fraction:
        """Parse "11/8", "-3/2", "1/0" or a bare integer, reducing the result.

        Raises:
            NotationError: If the text is not a fraction
        """
        try:
            fraction = Fraction.parse(text)
        except DomainError as e:
            raise self._fail(f"Invalid fraction '{text}': {e}", e) from e
        self._logger.debug(f"Parsed fraction {fraction}")
        return fraction

    def parse_int_list(self, text: str) -> list[int]:
        """Parse a comma separated list such as "1,2,1,2".

        Raises:
            NotationError: If an entry is not an integer or the list is empty
        """
        items = [item.strip() for item in text.split(",")]
        if not items or not all(items):
            raise self._fail(f"Invalid integer list '{text}'")
        try:
            return [int(item) for item in items]
        except ValueError as e:
            raise self._fail(f"Invalid integer list '{text}': {e}", e) from e

    def parse_word(self, text: str) -> GenWord:
        """Parse a generator word.

        Accepted forms are "R^1 L^2 S" (a missing exponent means 1), "Id" for the
        empty word, "cf:1,2,1,2" for R^1 L^2 R^1 L^2 and "neg:2,2" for
        R^2 S R^2 S.

        Args:
            text: Word in one of the forms above

        Returns:
            The normalized word

        Raises:
            NotationError: If the word cannot be read
        """
        stripped = text.strip()
        try:
            if stripped.startswith("cf:"):
                return alternating_word(self.parse_int_list(stripped[3:]))
            if stripped.startswith("neg:"):
                return negative_word(self.parse_int_list(stripped[4:]))
            if stripped in ("", "Id"):
                return ()

            word: list[tuple[Gen, int]] = []
            for token in stripped.split():
                match = _TOKEN_RE.match(token)
                if not match:
                    raise self._fail(f"Invalid generator '{token}' in word '{text}'")
                exponent = int(match.group(2)) if match.group(2) is not None else 1
                word.append((Gen(match.group(1)), exponent))
            return normalize_word(word)
        except NotationError:
            raise
        except DomainError as e:
            raise self._fail(f"Invalid word '{text}': {e}", e) from e

    def parse_quiver(self, text: str) -> Quiver:
        """Parse "fence:b", "flat:b", "circ:a" or "edges:n;s>t,s>t,...".

        Vertices in the explicit form are numbered from 1.

        Raises:
            NotationError: If the quiver cannot be read or built
        """
        kind, sep, body = text.strip().partition(":")
        if not sep:
            raise self._fail(f"Invalid quiver '{text}': expected 'kind:...'")
        builders = {"fence": fence_quiver, "flat": flat_quiver, "circ": circular_fence}
        try:
            if kind in builders:
                quiver = builders[kind](self.parse_int_list(body))
            elif kind == "edges":
                quiver = self._parse_edges(text, body)
            else:
                raise self._fail(f"Unknown quiver kind '{kind}' in '{text}'")
        except NotationError:
            raise
        except DomainError as e:
            raise self._fail(f"Invalid quiver '{text}': {e}", e) from e

        self._logger.debug(
            f"Parsed quiver with {quiver.n_vertices} vertices "
            f"and {len(quiver.arrows)} arrows"
        )
        return quiver

    def _parse_edges(self, text: str, body: str) -> Quiver:
        count_text, _, arrows_text = body.partition(";")
        try:
            n_vertices = int(count_text)
        except ValueError as e:
            raise self._fail(f"Invalid vertex count in '{text}'", e) from e

        arrows = []
        for item in filter(None, (a.strip() for a in arrows_text.split(","))):
            match = _ARROW_RE.match(item)
            if not match:
                raise self._fail(f"Invalid arrow '{item}' in '{text}'")
            arrows.append((int(match.group(1)) - 1, int(match.group(2)) - 1))
        return Quiver(n_vertices, tuple(arrows))

    def parse_poly_json(self, text: str) -> LaurentPoly:
        """Parse {"lowest_exp": k, "coeffs": [...]}.

        Raises:
            NotationError: If the text is not a polynomial record
        """
        try:
            return LaurentPoly.from_json(json.loads(text))
        except json.JSONDecodeError as e:
            raise self._fail(f"Invalid JSON polynomial: {e}", e) from e
        except DomainError as e:
            raise self._fail(str(e), e) from e
