"""Inputs, per-input records and summaries of the unimodality scans."""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Iterator, Sequence

from ..algebra.continued_fractions import Fraction
from ..algebra.laurent import LaurentPoly
from ..algebra.qmod import DEFAULT_MAX_ROUNDS, canonical_trace, m_q
from ..models import IotaException, IotaRecord, OguzRecord, PolyRecord, ScanSummary
from .jones import iota


def even_compositions(max_sum: int) -> list[tuple[int, ...]]:
    """Every positive tuple of even length with sum <= max_sum, lexicographically."""

    def extend(prefix: tuple[int, ...], budget: int) -> Iterator[tuple[int, ...]]:
        if prefix and len(prefix) % 2 == 0:
            yield prefix
        for part in range(1, budget + 1):
            yield from extend((*prefix, part), budget - part)

    return sorted(extend((), max_sum))


def fractions_above_one(max_r: int) -> list[Fraction]:
    """Irreducible r/s > 1 with r <= max_r, ordered by (r, s)."""
    return [
        Fraction(r, s)
        for r in range(2, max_r + 1)
        for s in range(1, r)
        if math.gcd(r, s) == 1
    ]


def staircase_profile(k: int) -> list[int]:
    """1, 2, ..., k, k-1, k, k-1, ..., 2, 1 (2k + 1 entries)."""
    rising = list(range(1, k + 1))
    return [*rising, k - 1, *rising[::-1]]


def is_oguz_exception(a: Sequence[int]) -> bool:
    """(1, k, 1, k) or (k, 1, k, 1) for some k >= 1."""
    if len(a) != 4:
        return False
    return (a[0] == a[2] == 1 and a[1] == a[3]) or (a[1] == a[3] == 1 and a[0] == a[2])


def classify_iota_exception(polynomial: LaurentPoly) -> IotaException:
    if polynomial.is_zero() or polynomial.modality() == 1:
        return IotaException.NONE
    vector = polynomial.coefficient_vector()
    if len(vector) >= 3 and vector[0] == vector[-1] == 1 and not any(vector[1:-1]):
        return IotaException.ONE_PLUS_QN
    k, odd = divmod(len(vector) - 1, 2)
    if not odd and k >= 2 and vector == staircase_profile(k):
        return IotaException.STAIRCASE
    return IotaException.UNCLASSIFIED


def _poly_record(polynomial: LaurentPoly) -> PolyRecord:
    return PolyRecord(**polynomial.to_json())


def oguz_record(a: Sequence[int]) -> OguzRecord:
    trace = canonical_trace(m_q(a))
    modality = trace.modality()
    expected = is_oguz_exception(a)
    constant_term = trace.coefficient(0)
    return OguzRecord(
        a=list(a),
        trace=_poly_record(trace),
        modality=modality,
        constant_term=constant_term,
        expected_exception=expected,
        violation=(modality > 1) != expected or constant_term != 1,
    )


def iota_record(alpha: Fraction, max_rounds: int = DEFAULT_MAX_ROUNDS) -> IotaRecord:
    result = iota(alpha, with_trace_type=True, max_rounds=max_rounds)
    defect = result.iota
    modality = 0 if defect.is_zero() else defect.modality()
    exception = classify_iota_exception(defect)
    negative = any(c < 0 for c in defect.coeffs)
    return IotaRecord(
        alpha=str(alpha),
        J=_poly_record(result.J),
        I=_poly_record(defect),
        modality=modality,
        exception=exception.value,
        trace_type=str(result.trace_type),
        violation=modality > 2 or exception is IotaException.UNCLASSIFIED or negative,
    )


def oguz_scan(max_sum: int) -> list[OguzRecord]:
    return [oguz_record(a) for a in even_compositions(max_sum)]


def iota_scan(max_r: int) -> list[IotaRecord]:
    return [iota_record(alpha) for alpha in fractions_above_one(max_r)]


def summarize_oguz(max_sum: int, records: Sequence[OguzRecord]) -> ScanSummary:
    non_unimodal = [r for r in records if r.modality > 1]
    exceptions = Counter(
        "oguz_exception" if r.expected_exception else "other" for r in non_unimodal
    )
    return ScanSummary(
        kind="oguz",
        bound=max_sum,
        records=len(records),
        non_unimodal=len(non_unimodal),
        max_modality=max((r.modality for r in records), default=0),
        exception_counts=dict(sorted(exceptions.items())),
        violations=[",".join(map(str, r.a)) for r in records if r.violation],
    )


def summarize_iota(max_r: int, records: Sequence[IotaRecord]) -> ScanSummary:
    exceptions = Counter(r.exception for r in records if r.exception != "none")
    return ScanSummary(
        kind="iota",
        bound=max_r,
        records=len(records),
        non_unimodal=sum(1 for r in records if r.modality > 1),
        max_modality=max((r.modality for r in records), default=0),
        exception_counts=dict(sorted(exceptions.items())),
        violations=[r.alpha for r in records if r.violation],
    )
