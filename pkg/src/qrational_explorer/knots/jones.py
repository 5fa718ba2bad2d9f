"""Normalized Jones polynomials of rational links and the defect I_alpha."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from ..algebra.continued_fractions import Fraction, cf_matrix, regular_cf
from ..algebra.laurent import ONE_MINUS_Q, Q, LaurentPoly
from ..algebra.qmod import (
    DEFAULT_MAX_ROUNDS,
    QMatrix,
    TraceType,
    generators,
    m_q,
    reduce_trace_type,
)
from ..algebra.qrat import left_qrat, right_qrat
from ..exceptions import DomainError, QRationalError
from ..models import JonesRoute, SuiteReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JonesResult:
    alpha: Fraction
    J: LaurentPoly
    route: JonesRoute


@dataclass(frozen=True)
class IotaResult:
    alpha: Fraction
    J: LaurentPoly
    iota: LaurentPoly
    trace_type: TraceType | None = None


def _require_above_one(alpha: Fraction) -> None:
    if not alpha.exceeds_one:
        raise DomainError(f"rational links are indexed by fractions > 1, got {alpha}")


def jones(
    alpha: Fraction, route: JonesRoute = JonesRoute.FLAT_RECIPROCAL
) -> JonesResult:
    """J_alpha as the reciprocal of R^flat, or as q R^sharp + (1 - q) S^sharp."""
    _require_above_one(alpha)
    if route is JonesRoute.FLAT_RECIPROCAL:
        polynomial = left_qrat(alpha).num.reciprocal()
    else:
        right = right_qrat(alpha)
        polynomial = Q * right.num + ONE_MINUS_Q * right.den
    return JonesResult(alpha, polynomial, route)


def jones_palindromic(alpha: Fraction) -> bool:
    """Whether J_alpha is palindromic; must agree with s^2 = -1 (mod r).

    Raises:
        QRationalError: If the polynomial and the congruence disagree
    """
    palindromic = jones(alpha).J.is_palindromic()
    congruence = (alpha.s * alpha.s + 1) % alpha.r == 0
    if palindromic != congruence:
        raise QRationalError(
            f"J_{alpha} palindromic={palindromic} but s^2 = -1 mod r is {congruence}"
        )
    return palindromic


def trace_matrix_A(alpha: Fraction) -> QMatrix:
    """A = (-S_q) M_q(a) for the even expansion a of alpha."""
    _require_above_one(alpha)
    _, s_q, _ = generators()
    return -s_q @ m_q(regular_cf(alpha).terms)


def iota(
    alpha: Fraction,
    with_trace_type: bool = False,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> IotaResult:
    """I_alpha = (J^v - J) / (1 - q), canonically normalized; 0 for palindromic J."""
    polynomial = jones(alpha).J
    if polynomial.is_palindromic():
        defect = LaurentPoly.zero()
    else:
        defect = polynomial.reciprocal() - polynomial
        defect = defect.divide_one_minus_q().canonical()

    trace_type = None
    if with_trace_type:
        trace_type = reduce_trace_type(
            trace_matrix_A(alpha), max_rounds=max_rounds, log=logger
        )
    return IotaResult(alpha, polynomial, defect, trace_type)


def trace_preserving_family(alpha: Fraction, count: int) -> list[Fraction]:
    """alpha_i = (r + i(s + t) + i^2 u) / (s + i u) for i = 1..count.

    (r, t, s, u) are the entries of M(a) at q = 1. Every alpha_i has the same
    I as alpha; callers verify this by recomputing.
    """
    _require_above_one(alpha)
    if count < 1:
        raise DomainError(f"family size must be positive, got {count}")
    (r, t), (s, u) = cf_matrix(regular_cf(alpha).terms)
    return [
        Fraction.of(r + i * (s + t) + i * i * u, s + i * u)
        for i in range(1, count + 1)
    ]


def schubert_jones_invariance(max_r: int) -> SuiteReport:
    """Compare J over Schubert-related pairs r/s, r/s' with r <= max_r.

    ss' = 1 (mod r) must give equal polynomials and ss' = -1 (mod r)
    reciprocal ones.
    """
    report = SuiteReport(suite="schubert")
    for r in range(2, max_r + 1):
        cache = {
            s: jones(Fraction(r, s)).J
            for s in range(1, r)
            if math.gcd(r, s) == 1
        }
        for s, j_s in cache.items():
            for s_prime, j_other in cache.items():
                if s_prime < s:
                    continue
                product = (s * s_prime) % r
                if product == 1 % r:
                    report.checked += 1
                    if j_s != j_other:
                        report.failures.append(
                            {"r": r, "s": s, "s'": s_prime, "relation": "ss'=1"}
                        )
                if product == (-1) % r:
                    report.checked += 1
                    if j_s != j_other.reciprocal():
                        report.failures.append(
                            {"r": r, "s": s, "s'": s_prime, "relation": "ss'=-1"}
                        )
    logger.info(f"schubert: {report.checked} pairs checked")
    return report
