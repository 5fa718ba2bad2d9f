"""Rational links: Jones polynomials, the defect I_alpha and conjecture scans."""
