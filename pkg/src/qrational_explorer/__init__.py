"""q-Rational Explorer - exact q-deformed rationals and rational link invariants."""

from .cli import app

__version__ = "0.1.0"
__all__ = ["app"]
