"""Invariant suites behind the verify command."""
