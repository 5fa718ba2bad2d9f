"""Invariant suites: exhaustive and seeded checks of the identities used here.

Each suite returns a :class:`SuiteReport` holding the number of checks run and one
counterexample record per failed check, in input order.
"""

import logging
import math
from collections import Counter
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from ..algebra.continued_fractions import (
    INFINITY,
    ZERO,
    Fraction,
    cf_matrix,
    regular_cf,
)
from ..algebra.laurent import ONE, ONE_MINUS_Q, Q, LaurentPoly, q_integer
from ..algebra.qmod import (
    GenWord,
    canonical_trace,
    format_word,
    is_group_element,
    m_q,
    matrix_equiv,
    orthogonal_q_transpose,
    orthogonal_word,
    pair_equiv,
    q_transpose,
    reduce_trace_type,
    transpose_word,
    word_to_matrix,
)
from ..algebra.qrat import (
    column_fraction,
    first_column,
    first_row_column,
    flat_integer_numerator,
    left_invert,
    left_negate,
    left_qrat,
    left_shift,
    right_qrat,
    row_fraction,
)
from ..combinatorics.quivers import (
    circular_fence,
    closure_poly,
    fence_quiver,
    flat_quiver,
    flat_quivers,
    odd_flat_quivers,
    odd_sharp_quivers,
    opposite,
    rank_poly,
    sharp_quivers,
)
from ..config import Settings
from ..exceptions import QRationalError
from ..knots.jones import (
    iota,
    jones,
    jones_palindromic,
    schubert_jones_invariance,
    trace_matrix_A,
    trace_preserving_family,
)
from ..knots.scans import even_compositions, fractions_above_one
from ..models import (
    ClosureMethod,
    Gen,
    JonesRoute,
    Route,
    SuiteName,
    SuiteReport,
    TraceTypeKind,
)
from ..utils.logging import setup_logger

MAX_FAILURES = 50


@dataclass(frozen=True)
class SuiteBounds:
    """Input ranges shared by the suites."""

    max_den: int = 30
    max_sum: int = 12
    words: int = 500
    seed: int = 20240611
    trace_rounds: int = 64
    brute_force_max_vertices: int = 24

    @classmethod
    def from_settings(cls, settings: Settings, **overrides: Any) -> "SuiteBounds":
        values: dict[str, Any] = {
            "seed": settings.random_seed,
            "trace_rounds": settings.trace_iteration_cap,
            "brute_force_max_vertices": settings.brute_force_max_vertices,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class _Recorder:
    """Counts checks and keeps the first failures of one suite."""

    def __init__(self, suite: str):
        self.report = SuiteReport(suite=suite)

    def check(self, ok: bool, law: str, **details: Any) -> None:
        self.report.checked += 1
        if not ok and len(self.report.failures) < MAX_FAILURES:
            self.report.failures.append({"law": law, **details})

    def merge(self, other: SuiteReport) -> None:
        self.report.checked += other.checked
        for failure in other.failures:
            if len(self.report.failures) < MAX_FAILURES:
                self.report.failures.append(failure)


def btuples(max_sum: int) -> list[tuple[int, ...]]:
    """Fence shapes: ends >= 0, interior entries > 0, sum <= max_sum."""
    found: set[tuple[int, ...]] = set()

    def extend(prefix: tuple[int, ...], budget: int) -> Iterator[tuple[int, ...]]:
        for last in range(0, budget + 1):
            yield (*prefix, last)
        for part in range(1, budget + 1):
            yield from extend((*prefix, part), budget - part)

    for first in range(0, max_sum + 1):
        found.add((first,))
        found.update(extend((first,), max_sum - first))
    return sorted(found)


def random_words(count: int, seed: int, max_length: int = 12) -> list[GenWord]:
    """Seeded random words with R/L exponents in [-5, 5]."""
    rng = np.random.default_rng(seed)
    exponents = [e for e in range(-5, 6) if e]
    words = []
    for _ in range(count):
        word: list[tuple[Gen, int]] = []
        for _ in range(int(rng.integers(0, max_length + 1))):
            gen = (Gen.R, Gen.L, Gen.S)[int(rng.integers(0, 3))]
            exp = 1 if gen is Gen.S else exponents[int(rng.integers(0, len(exponents)))]
            word.append((gen, exp))
        words.append(tuple(word))
    return words


def _poly(p: LaurentPoly) -> str:
    return str(p)


def routes_suite(bounds: SuiteBounds) -> SuiteReport:
    rec = _Recorder(SuiteName.ROUTES.value)

    right_inf, left_inf = right_qrat(INFINITY), left_qrat(INFINITY)
    rec.check(right_inf.pair == (ONE, LaurentPoly.zero()), "right 1/0")
    rec.check(left_inf.pair == (ONE, ONE_MINUS_Q), "left 1/0")
    rec.check(right_qrat(ZERO).pair == (LaurentPoly.zero(), ONE), "right 0/1")
    rec.check(
        left_qrat(ZERO).pair == (ONE - LaurentPoly.monomial(-1), ONE), "left 0/1"
    )

    for n in range(-bounds.max_den, bounds.max_den + 1):
        x = Fraction.of(n)
        rec.check(
            flat_integer_numerator(n) == left_qrat(x).num,
            "flat integer numerator",
            n=n,
            closed_form=_poly(flat_integer_numerator(n)),
            direct=_poly(left_qrat(x).num),
        )
        if n >= 0:
            rec.check(right_qrat(x).pair == (q_integer(n), ONE), "q-integer", n=n)

    for x in fractions_above_one(bounds.max_den):
        label = str(x)
        right = right_qrat(x)
        left = left_qrat(x)
        for route in (Route.NEGATIVE_CF, Route.CLOSURE):
            other = right_qrat(x, route)
            rec.check(
                other.pair == right.pair, "right routes", x=label, route=route.value
            )
        rec.check(left_qrat(x, Route.CLOSURE).pair == left.pair, "left routes", x=label)
        for q_rat in (right, left):
            at_one = (q_rat.num.at_one(), q_rat.den.at_one())
            side = q_rat.side.value
            rec.check(at_one == (x.r, x.s), "value at 1", x=label, side=side)
        rec.check(
            jones(x, JonesRoute.FLAT_RECIPROCAL).J
            == jones(x, JonesRoute.SHARP_FORMULA).J,
            "jones routes",
            x=label,
        )
        if x.s > 1:
            same_sharp = odd_sharp_quivers(x) == sharp_quivers(x)
            same_flat = odd_flat_quivers(x) == flat_quivers(x)
            rec.check(same_sharp, "odd sharp quivers", x=label)
            rec.check(same_flat, "odd flat quivers", x=label)

        for n in (-2, -1, 1, 2):
            shifted = Fraction.of(x.r + n * x.s, x.s)
            rec.check(
                left_shift(x, n).pair == left_qrat(shifted).pair,
                "left shift",
                x=str(x),
                n=n,
            )
        rec.check(left_negate(x).pair == left_qrat(-x).pair, "left negate", x=str(x))
        inverted = Fraction.of(x.s, x.r)
        inverted_pair = left_qrat(inverted).pair
        rec.check(left_invert(x).pair == inverted_pair, "left invert", x=label)
    rec.check(left_invert(ZERO).pair == (ONE, ONE_MINUS_Q), "left invert 0/1")
    return rec.report


def closure_oracle_suite(bounds: SuiteBounds) -> SuiteReport:
    rec = _Recorder(SuiteName.CLOSURE_ORACLE.value)
    cap = bounds.brute_force_max_vertices

    def agree(quiver: Any, label: str, shape: tuple[int, ...]) -> LaurentPoly:
        dp = closure_poly(quiver, ClosureMethod.DP)
        if quiver.n_vertices <= cap:
            brute = closure_poly(quiver, ClosureMethod.BRUTE_FORCE, max_vertices=cap)
            rec.check(dp == brute, "dp = brute force", quiver=label, b=list(shape))
        return dp

    flat_cache: dict[tuple[int, ...], LaurentPoly] = {}
    for b in btuples(bounds.max_sum):
        fence, flat = fence_quiver(b), flat_quiver(b)
        cl_fence = agree(fence, "fence", b)
        cl_flat = agree(flat, "flat", b)
        flat_cache[b] = cl_flat
        rec.check(rank_poly(fence) == cl_fence, "rank = closure", b=list(b))
        for quiver, cl, label in ((fence, cl_fence, "fence"), (flat, cl_flat, "flat")):
            cl_op = agree(opposite(quiver), f"opposite {label}", b)
            rec.check(
                cl_op == cl.reciprocal(), "opposite reciprocal", quiver=label, b=list(b)
            )

    for b, cl_flat in flat_cache.items():
        mirrored = flat_cache[b[::-1]]
        if len(b) % 2 == 0:
            ok = cl_flat == mirrored.reciprocal()
            rec.check(ok, "flat reversal (even)", b=list(b))
        else:
            rec.check(cl_flat == mirrored, "flat reversal (odd)", b=list(b))

    for a in even_compositions(bounds.max_sum):
        circ = circular_fence(a)
        agree(circ, "circular", a)
        agree(opposite(circ), "opposite circular", a)
    return rec.report


def transposes_suite(bounds: SuiteBounds) -> SuiteReport:
    rec = _Recorder(SuiteName.TRANSPOSES.value)
    words = random_words(bounds.words, bounds.seed)
    matrices = [word_to_matrix(w) for w in words]

    for word, m in zip(words, matrices, strict=True):
        label = format_word(word)
        tq, oq = q_transpose(m), orthogonal_q_transpose(m)
        rec.check(q_transpose(tq) == m, "T_q involution", word=label)
        rec.check(orthogonal_q_transpose(oq) == m, "O_q involution", word=label)
        rec.check(tq.trace() == m.trace(), "T_q trace", word=label)
        rec.check(tq.det() == m.det(), "T_q det", word=label)
        rec.check(
            oq.trace() == m.trace().invert_variable(), "O_q trace", word=label
        )
        rec.check(is_group_element(tq), "T_q membership", word=label)
        rec.check(is_group_element(oq), "O_q membership", word=label)
        rec.check(
            matrix_equiv(tq, word_to_matrix(transpose_word(word))) is not None,
            "transpose word",
            word=label,
        )
        rec.check(
            matrix_equiv(oq, word_to_matrix(orthogonal_word(word))) is not None,
            "orthogonal word",
            word=label,
        )

        at_one = m.evaluate_at_one()
        column = right_qrat(column_fraction(at_one)).pair
        column_ok = pair_equiv(first_column(m), column) is not None
        rec.check(column_ok, "column law", word=label)
        row = right_qrat(row_fraction(at_one)).pair
        row_ok = pair_equiv(first_row_column(m), row) is not None
        rec.check(row_ok, "row law", word=label)

    for i in range(len(matrices) - 1):
        a, b = matrices[i], matrices[i + 1]
        pair_label = f"{format_word(words[i])} | {format_word(words[i + 1])}"
        rec.check(
            q_transpose(a @ b) == q_transpose(b) @ q_transpose(a),
            "T_q antihomomorphism",
            words=pair_label,
        )
        rec.check(
            orthogonal_q_transpose(a @ b)
            == orthogonal_q_transpose(b) @ orthogonal_q_transpose(a),
            "O_q antihomomorphism",
            words=pair_label,
        )
    return rec.report


def arithmetic_flat_suite(bounds: SuiteBounds) -> SuiteReport:
    rec = _Recorder(SuiteName.ARITHMETIC_FLAT.value)
    limit = bounds.max_den

    for s in range(1, limit + 1):
        numerators = [r for r in range(1, 2 * limit + 1) if math.gcd(r, s) == 1]
        flat_s = {r: left_qrat(Fraction(r, s)).den for r in numerators}
        sharp_s = {r: right_qrat(Fraction(r, s)).den for r in numerators}
        for i, r in enumerate(numerators):
            for r2 in numerators[i:]:
                ctx = {"r": r, "r'": r2, "s": s}
                if (r - r2) % s == 0:
                    rec.check(flat_s[r] == flat_s[r2], "S-flat periodic", **ctx)
                    rec.check(sharp_s[r] == sharp_s[r2], "S-sharp periodic", **ctx)
                if (r + r2) % s == 0:
                    rec.check(
                        flat_s[r] == flat_s[r2].reciprocal(), "S-flat r+r'", **ctx
                    )
                if (r * r2) % s == 1 % s:
                    rec.check(flat_s[r] == flat_s[r2], "S-flat rr'=1", **ctx)
                if (r * r2) % s == (-1) % s:
                    rec.check(
                        flat_s[r] == flat_s[r2].reciprocal(), "S-flat rr'=-1", **ctx
                    )
                    rec.check(sharp_s[r] == sharp_s[r2], "S-sharp vw=-1", **ctx)

    for r in range(2, limit + 1):
        denominators = [s for s in range(1, 2 * limit + 1) if math.gcd(r, s) == 1]
        flat_r = {s: left_qrat(Fraction(r, s)).num for s in denominators}
        sharp_r = {s: right_qrat(Fraction(r, s)).num for s in denominators}
        for i, s in enumerate(denominators):
            for s2 in denominators[i:]:
                ctx = {"r": r, "s": s, "s'": s2}
                if (s * s2) % r == 1 % r:
                    rec.check(
                        flat_r[s].equiv(flat_r[s2]) is not None, "R-flat ss'=1", **ctx
                    )
                if (s * s2) % r == (-1) % r:
                    rec.check(
                        flat_r[s].equiv(flat_r[s2].reciprocal()) is not None,
                        "R-flat ss'=-1",
                        **ctx,
                    )
                    if s < r and s2 < r:
                        rec.check(sharp_r[s] == sharp_r[s2], "R-sharp vw=-1", **ctx)
        for s in range(1, r):
            t = r - s
            if math.gcd(r, s) == 1:
                rec.check(
                    flat_r[s] == flat_r[t].reciprocal(), "R-flat s+t=r", r=r, s=s, t=t
                )

    for x in fractions_above_one(limit):
        (r, t), (s, _u) = cf_matrix(regular_cf(x).terms)
        r_t = Fraction(r, t)
        lhs = left_qrat(x).num - left_qrat(r_t).num
        rhs = (Q - ONE) * (right_qrat(x).den - right_qrat(r_t).den)
        rec.check(lhs == rhs, "s-t identity", x=str(x), t=t)
        flat_num = left_qrat(x).num
        trace_side = (Q - ONE) * trace_matrix_A(x).trace()
        rec.check(
            trace_side.equiv(flat_num - flat_num.reciprocal()) is not None,
            "trace and Jones",
            x=str(x),
        )
    return rec.report


def palin_suite(bounds: SuiteBounds) -> SuiteReport:
    rec = _Recorder(SuiteName.PALIN.value)
    limit = bounds.max_den
    for s in range(1, limit + 1):
        for r in range(-limit, limit + 1):
            if math.gcd(r, s) != 1:
                continue
            x = Fraction(r, s)
            expected = (r * r + 1) % s == 0
            palindromic = left_qrat(x).den.is_palindromic()
            rec.check(palindromic == expected, "S-flat palindromic", x=str(x))
            if r >= 1:
                expected = (s * s + 1) % r == 0
                palindromic = left_qrat(x).num.is_palindromic()
                rec.check(palindromic == expected, "R-flat palindromic", x=str(x))
    for x in fractions_above_one(limit):
        try:
            jones_palindromic(x)
            rec.check(True, "J palindromic")
        except QRationalError as e:
            rec.check(False, "J palindromic", x=str(x), error=str(e))
    return rec.report


def trace_suite(bounds: SuiteBounds) -> SuiteReport:
    rec = _Recorder(SuiteName.TRACE.value)
    seen: Counter[TraceTypeKind] = Counter()
    fixed: list[GenWord] = [(), ((Gen.R, 1),), ((Gen.R, 2), (Gen.L, 2))]
    for word in fixed + random_words(bounds.words, bounds.seed + 1):
        label = format_word(word)
        m = word_to_matrix(word)
        trace = canonical_trace(m)
        rec.check(trace.is_palindromic(), "palindromic trace", word=label)
        rec.check(all(c >= 0 for c in trace.coeffs), "nonnegative trace", word=label)
        try:
            found = reduce_trace_type(m, max_rounds=bounds.trace_rounds)
        except QRationalError as e:
            rec.check(False, "trace reduction", word=label, error=str(e))
            continue
        rec.check(True, "trace reduction")
        seen[found.kind] += 1
        if found.kind is not TraceTypeKind.ONE_PLUS_Q_POW or found.n != 0:
            rec.check(
                trace.is_zero() or trace.coefficient(0) == 1,
                "constant term 1",
                word=label,
            )
    for kind in TraceTypeKind:
        rec.check(seen[kind] > 0, "trace type coverage", kind=kind.value)
    return rec.report


def circular_suite(bounds: SuiteBounds) -> SuiteReport:
    rec = _Recorder(SuiteName.CIRCULAR.value)
    for a in even_compositions(bounds.max_sum):
        trace = canonical_trace(m_q(a))
        closure = closure_poly(circular_fence(a))
        rec.check(closure == trace, "circular fence = trace", a=list(a))
        rec.check(trace.coefficient(0) == 1, "trace constant term", a=list(a))
    return rec.report


def jones_suite(bounds: SuiteBounds) -> SuiteReport:
    rec = _Recorder(SuiteName.JONES.value)
    for x in fractions_above_one(bounds.max_den):
        flat = jones(x, JonesRoute.FLAT_RECIPROCAL).J
        sharp = jones(x, JonesRoute.SHARP_FORMULA).J
        rec.check(flat == sharp, "routes agree", x=str(x))
        constant_one = flat.lowest_exp == 0 and flat.coefficient(0) == 1
        rec.check(constant_one, "J(0) = 1", x=str(x))
        rec.check(flat.at_one() == x.r, "J(1) = r", x=str(x))
        try:
            jones_palindromic(x)
            rec.check(True, "palindromic iff s^2 = -1")
        except QRationalError as e:
            rec.check(False, "palindromic iff s^2 = -1", x=str(x), error=str(e))
    rec.merge(schubert_jones_invariance(bounds.max_den))
    return rec.report


GOLDEN_IOTA = {
    Fraction(12, 5): LaurentPoly(0, (1, 0, 0, 1)),
    Fraction(12, 7): LaurentPoly(0, (1, 0, 0, 1)),
    Fraction(15, 4): LaurentPoly(0, (1, 2, 1, 2, 1)),
    Fraction(15, 11): LaurentPoly(0, (1, 2, 1, 2, 1)),
    Fraction(5, 2): LaurentPoly.zero(),
}


def iota_suite(bounds: SuiteBounds) -> SuiteReport:
    rec = _Recorder(SuiteName.IOTA.value)
    for alpha, expected in GOLDEN_IOTA.items():
        found = iota(alpha).iota
        rec.check(
            found == expected, "golden value", alpha=str(alpha), found=_poly(found)
        )

    for alpha in fractions_above_one(bounds.max_den):
        defect = iota(alpha).iota
        ctx = {"alpha": str(alpha), "I": _poly(defect)}
        rec.check(defect.is_palindromic(), "palindromic", **ctx)
        rec.check(all(c >= 0 for c in defect.coeffs), "nonnegative", **ctx)
        rec.check(defect.coefficient(0) in (0, 1), "I(0) in {0, 1}", **ctx)
        rec.check(defect != LaurentPoly.constant(2), "I != 2", **ctx)
        rec.check(defect == canonical_trace(trace_matrix_A(alpha)), "I = Tr A", **ctx)
        if alpha.r <= max(bounds.max_den // 2, 5):
            for member in trace_preserving_family(alpha, 3):
                rec.check(
                    iota(member).iota == defect,
                    "trace preserving family",
                    alpha=str(alpha),
                    member=str(member),
                )
    return rec.report


SUITES: dict[SuiteName, Callable[[SuiteBounds], SuiteReport]] = {
    SuiteName.ROUTES: routes_suite,
    SuiteName.CLOSURE_ORACLE: closure_oracle_suite,
    SuiteName.TRANSPOSES: transposes_suite,
    SuiteName.ARITHMETIC_FLAT: arithmetic_flat_suite,
    SuiteName.PALIN: palin_suite,
    SuiteName.TRACE: trace_suite,
    SuiteName.CIRCULAR: circular_suite,
    SuiteName.JONES: jones_suite,
    SuiteName.IOTA: iota_suite,
}


class VerificationRunner:
    """Runs one suite, or every suite for ``all``, and logs the outcome."""

    def __init__(self, logger: Optional[logging.Logger] = None):
        self._logger = logger or setup_logger("verification", level=logging.INFO)

    def run(self, suite: SuiteName, bounds: SuiteBounds) -> list[SuiteReport]:
        names = list(SUITES) if suite is SuiteName.ALL else [suite]
        reports = []
        for name in names:
            self._logger.info(f"Running suite {name.value} with {bounds}")
            report = SUITES[name](bounds)
            level = logging.INFO if report.passed else logging.WARNING
            self._logger.log(
                level,
                f"Suite {name.value}: {report.checked} checks, "
                f"{len(report.failures)} failures",
            )
            reports.append(report)
        return reports
