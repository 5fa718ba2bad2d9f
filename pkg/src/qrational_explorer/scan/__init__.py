"""Sharded scan harness."""
