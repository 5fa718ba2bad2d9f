"""The q-deformed modular group generated by R_q, S_q and L_q.

Matrices are dense 2x2 arrays of :class:`LaurentPoly`. Equality is exact; the
projective relation ``A = ±q^n B`` is always checked explicitly through
:func:`matrix_equiv`.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from ..exceptions import DomainError, RecognitionError, TraceReductionError
from ..models import Gen, TraceTypeKind
from .continued_fractions import Fraction, cf_matrix, regular_cf
from .laurent import ONE, Q, Q_INV, ZERO, LaurentPoly, q_integer, signed_q_integer

GenWord = tuple[tuple[Gen, int], ...]
IntMatrix = tuple[tuple[int, int], tuple[int, int]]

DEFAULT_MAX_ROUNDS = 64

logger = logging.getLogger(__name__)


def normalize_word(word: Iterable[tuple[Gen, int]]) -> GenWord:
    """Drop zero exponents and merge neighbouring powers of R or of L.

    S is never merged: S_q^2 is only equivalent to the identity.
    """
    result: list[tuple[Gen, int]] = []
    for gen, exp in word:
        if gen is Gen.S and exp != 1:
            raise DomainError(f"S may only appear with exponent 1, got S^{exp}")
        if exp == 0:
            continue
        if result and gen is not Gen.S and result[-1][0] is gen:
            merged = result[-1][1] + exp
            result.pop()
            if merged:
                result.append((gen, merged))
            continue
        result.append((gen, exp))
    return tuple(result)


@dataclass(frozen=True)
class QMatrix:
    """[[a, b], [c, d]] over Z[q, q^-1], optionally tagged with its word."""

    a: LaurentPoly
    b: LaurentPoly
    c: LaurentPoly
    d: LaurentPoly
    word: GenWord | None = field(default=None, compare=False)

    @classmethod
    def identity(cls) -> QMatrix:
        return cls(ONE, ZERO, ZERO, ONE, word=())

    @classmethod
    def from_ints(cls, m: IntMatrix) -> QMatrix:
        (a, b), (c, d) = m
        return cls(
            LaurentPoly.constant(a),
            LaurentPoly.constant(b),
            LaurentPoly.constant(c),
            LaurentPoly.constant(d),
        )

    @property
    def entries(self) -> tuple[tuple[LaurentPoly, LaurentPoly], ...]:
        return ((self.a, self.b), (self.c, self.d))

    def __matmul__(self, other: QMatrix) -> QMatrix:
        word = None
        if self.word is not None and other.word is not None:
            word = normalize_word((*self.word, *other.word))
        return QMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            word=word,
        )

    def __neg__(self) -> QMatrix:
        return QMatrix(-self.a, -self.b, -self.c, -self.d)

    def scale(self, factor: LaurentPoly) -> QMatrix:
        return QMatrix(
            factor * self.a, factor * self.b, factor * self.c, factor * self.d
        )

    def invert_variable(self) -> QMatrix:
        """Substitute q -> q^-1 in every entry."""
        return QMatrix(
            self.a.invert_variable(),
            self.b.invert_variable(),
            self.c.invert_variable(),
            self.d.invert_variable(),
        )

    def trace(self) -> LaurentPoly:
        return self.a + self.d

    def det(self) -> LaurentPoly:
        return self.a * self.d - self.b * self.c

    def evaluate_at_one(self) -> IntMatrix:
        return (
            (self.a.at_one(), self.b.at_one()),
            (self.c.at_one(), self.d.at_one()),
        )

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def generators() -> tuple[QMatrix, QMatrix, QMatrix]:
    """(R_q, S_q, L_q)."""
    r_q = QMatrix(Q, ONE, ZERO, ONE, word=((Gen.R, 1),))
    s_q = QMatrix(ZERO, -Q_INV, ONE, ZERO, word=((Gen.S, 1),))
    l_q = QMatrix(ONE, ZERO, ONE, Q_INV, word=((Gen.L, 1),))
    return r_q, s_q, l_q


def _generator_power(gen: Gen, n: int) -> QMatrix:
    # closed forms, valid for every integer n
    if gen is Gen.R:
        return QMatrix(
            LaurentPoly.monomial(n), signed_q_integer(n), ZERO, ONE, word=((gen, n),)
        )
    if gen is Gen.L:
        return QMatrix(
            ONE,
            ZERO,
            signed_q_integer(n).invert_variable(),
            LaurentPoly.monomial(-n),
            word=((gen, n),),
        )
    if n != 1:
        raise DomainError(f"S may only appear with exponent 1, got S^{n}")
    return generators()[1]


def inverse(m: QMatrix) -> QMatrix:
    """Exact inverse; the determinant must be a unit ±q^k.

    Raises:
        DomainError: If the matrix is not invertible over Z[q, q^-1]
    """
    det = m.det()
    if not det.is_unit():
        raise DomainError(f"determinant {det} is not a unit")
    det_inv = det**-1
    word = None
    if m.word is not None and all(g is not Gen.S for g, _ in m.word):
        word = tuple((g, -e) for g, e in reversed(m.word))
    return QMatrix(
        det_inv * m.d, -(det_inv * m.b), -(det_inv * m.c), det_inv * m.a, word=word
    )


def power(m: QMatrix, n: int) -> QMatrix:
    """M^n for any integer n (negative powers go through :func:`inverse`)."""
    if n < 0:
        return power(inverse(m), -n)
    result = QMatrix.identity()
    base = m
    while n:
        if n & 1:
            result = result @ base
        base = base @ base
        n >>= 1
    return result


def word_to_matrix(word: Sequence[tuple[Gen, int]]) -> QMatrix:
    normalized = normalize_word(word)
    result = QMatrix.identity()
    for gen, exp in normalized:
        result = result @ _generator_power(gen, exp)
    return QMatrix(result.a, result.b, result.c, result.d, word=normalized)


def alternating_word(terms: Sequence[int]) -> GenWord:
    """R^a1 L^a2 R^a3 ... as a word."""
    if len(terms) % 2:
        raise DomainError(f"M_q needs an even number of terms, got {len(terms)}")
    return normalize_word(
        (Gen.R if i % 2 == 0 else Gen.L, a) for i, a in enumerate(terms)
    )


def negative_word(terms: Sequence[int]) -> GenWord:
    """R^c1 S R^c2 S ... R^ck S as a word."""
    word: list[tuple[Gen, int]] = []
    for c in terms:
        word.extend(((Gen.R, c), (Gen.S, 1)))
    return normalize_word(word)


def m_q(terms: Sequence[int]) -> QMatrix:
    return word_to_matrix(alternating_word(terms))


def m_q_neg(terms: Sequence[int]) -> QMatrix:
    return word_to_matrix(negative_word(terms))


def q_transpose(m: QMatrix) -> QMatrix:
    """[[R, V], [S, U]] -> [[R, q^-1 S], [q V, U]]."""
    return QMatrix(m.a, Q_INV * m.c, Q * m.b, m.d)


def orthogonal_q_transpose(m: QMatrix) -> QMatrix:
    """[[R, V], [S, U]] -> [[U(1/q), q^-1 V(1/q)], [q S(1/q), R(1/q)]]."""
    flipped = m.invert_variable()
    return QMatrix(flipped.d, Q_INV * flipped.b, Q * flipped.c, flipped.a)


def transpose_word(word: Sequence[tuple[Gen, int]]) -> GenWord:
    """A word whose matrix is equivalent to the q-transpose of ``word``'s matrix."""
    swap = {Gen.R: Gen.L, Gen.L: Gen.R, Gen.S: Gen.S}
    return normalize_word((swap[g], e) for g, e in reversed(word))


def orthogonal_word(word: Sequence[tuple[Gen, int]]) -> GenWord:
    """A word whose matrix is equivalent to the orthogonal q-transpose."""
    return normalize_word(reversed(word))


def trace(m: QMatrix) -> LaurentPoly:
    return m.trace()


def det(m: QMatrix) -> LaurentPoly:
    return m.det()


def _common_scaling(
    left: Sequence[LaurentPoly], right: Sequence[LaurentPoly]
) -> tuple[int, int] | None:
    found: tuple[int, int] | None = None
    for x, y in zip(left, right, strict=True):
        if x.is_zero() and y.is_zero():
            continue
        scaling = x.equiv(y)
        if scaling is None or (found is not None and scaling != found):
            return None
        found = scaling
    return found if found is not None else (1, 0)


def matrix_equiv(a: QMatrix, b: QMatrix) -> tuple[int, int] | None:
    """(sign, n) with a = sign * q^n * b entrywise, or None."""
    return _common_scaling((a.a, a.b, a.c, a.d), (b.a, b.b, b.c, b.d))


def pair_equiv(
    p: tuple[LaurentPoly, LaurentPoly], other: tuple[LaurentPoly, LaurentPoly]
) -> tuple[int, int] | None:
    """(sign, n) with p = sign * q^n * other in both slots, or None."""
    return _common_scaling(p, other)


def canonical_trace(m: QMatrix) -> LaurentPoly:
    return m.trace().canonical()


def recognize(m: IntMatrix) -> GenWord:
    """A word in R, L, S whose matrix at q = 1 is ±m.

    Raises:
        RecognitionError: If det(m) != 1
    """
    (a, b), (c, d) = m
    if a * d - b * c != 1:
        raise RecognitionError(f"det of {m} is {a * d - b * c}, expected 1")
    if c < 0 or (c == 0 and a < 0):
        a, b, c, d = -a, -b, -c, -d

    if a > 0 and c > 0:
        terms = regular_cf(Fraction.of(a, c)).terms
        if cf_matrix(terms) == ((a, b), (c, d)):
            return alternating_word(terms)

    word: list[tuple[Gen, int]] = []
    while c != 0:
        # m = R^k S m' with m' = S R^-k m up to sign
        k = a // c
        word.extend(((Gen.R, k), (Gen.S, 1)))
        a, b, c, d = -c, -d, a - k * c, b - k * d
    # a = d = ±1 here
    word.append((Gen.R, a * b))
    return normalize_word(word)


def is_group_element(m: QMatrix) -> bool:
    """Whether m is equivalent to the matrix of the word recognized from m(1)."""
    try:
        word = recognize(m.evaluate_at_one())
    except RecognitionError:
        return False
    return matrix_equiv(m, word_to_matrix(word)) is not None


def format_word(word: Sequence[tuple[Gen, int]]) -> str:
    if not word:
        return "Id"
    return " ".join("S" if g is Gen.S else f"{g.value}^{e}" for g, e in word)


@dataclass(frozen=True)
class TraceType:
    """One of 1 + q^n, [n]_q or the trace of M_q(a) for a positive tuple a."""

    kind: TraceTypeKind
    n: int = 0
    terms: tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.kind is TraceTypeKind.ONE_PLUS_Q_POW:
            return f"1+q^{self.n}"
        if self.kind is TraceTypeKind.Q_INT:
            return f"[{self.n}]_q"
        return "M_q(" + ",".join(str(t) for t in self.terms) + ")"


def trace_type_polynomial(tt: TraceType) -> LaurentPoly:
    if tt.kind is TraceTypeKind.ONE_PLUS_Q_POW:
        return ONE + LaurentPoly.monomial(tt.n)
    if tt.kind is TraceTypeKind.Q_INT:
        return q_integer(tt.n)
    return canonical_trace(m_q(tt.terms))


def reduce_trace_type(
    a: QMatrix,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    log: logging.Logger | None = None,
) -> TraceType:
    """Classify the canonical trace of a group element.

    Each round reads M = S A(1) = [[r, t], [s, u]] (so Tr A(1) = s - t) and applies
    one of: negation, -A^-1 (exchanges s and t), conjugation by a power of L_q
    (moves s and t by a multiple of u), or the orthogonal q-transpose taken
    around -S_q (exchanges r and u). All moves keep the trace up to ±q^n and
    q -> 1/q, so the result is checked against the input at the end.

    Raises:
        TraceReductionError: If max_rounds is exceeded or the cross-check fails
    """
    log = log or logger
    _, s_q, l_q = generators()
    minus_s = -s_q
    minus_s_inv = inverse(minus_s)
    current = a
    result: TraceType | None = None

    for round_no in range(max_rounds):
        (x11, x12), (x21, x22) = current.evaluate_at_one()
        r, t, s, u = -x21, -x22, x11, x12
        log.debug(f"round {round_no}: r={r} t={t} s={s} u={u}")

        if s == t:
            result = TraceType(TraceTypeKind.Q_INT, 0)
            break
        if u == 0:
            result = TraceType(TraceTypeKind.ONE_PLUS_Q_POW, abs(r))
            break
        if u < 0:
            current = -current
            continue
        if s < t:
            current = -inverse(current)
            continue

        n = (-t) // u
        if n:
            current = power(l_q, -n) @ current @ power(l_q, n)
            t, s = t + n * u, s + n * u
        if u == 1:
            result = TraceType(TraceTypeKind.Q_INT, s - t)
            break
        if s > u:
            terms = regular_cf(Fraction.of(s, u)).terms
            result = TraceType(TraceTypeKind.POSITIVE_WORD, terms=terms)
            break
        current = minus_s @ orthogonal_q_transpose(minus_s_inv @ current)

    if result is None:
        raise TraceReductionError(
            f"trace reduction did not finish in {max_rounds} rounds; "
            f"last matrix {current}"
        )

    expected = canonical_trace(a)
    found = trace_type_polynomial(result)
    if found != expected:
        raise TraceReductionError(
            f"reduced to {result} with trace {found}, expected {expected}; "
            f"last matrix {current}"
        )
    return result
