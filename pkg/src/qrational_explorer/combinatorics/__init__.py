"""Quivers and their closure polynomials."""
