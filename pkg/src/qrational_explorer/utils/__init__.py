"""Utility modules for q-Rational Explorer."""
