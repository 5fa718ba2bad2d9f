"""Exact algebra: Laurent polynomials, fractions, the q-modular group, q-rationals."""
