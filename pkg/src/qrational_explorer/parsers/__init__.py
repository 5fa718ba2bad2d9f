"""Parsers for the command line notation."""
