"""Left and right q-deformed rational numbers."""

from __future__ import annotations

from dataclasses import dataclass

from ..combinatorics.quivers import closure_poly, flat_quivers, sharp_quivers
from ..exceptions import DomainError
from ..models import ClosureMethod, PolyRecord, QRationalRecord, Route, Side
from .continued_fractions import Fraction, negative_cf, regular_cf
from .laurent import (
    ONE,
    ONE_MINUS_Q,
    Q_INV,
    ZERO,
    LaurentPoly,
    q_integer,
    signed_q_integer,
)
from .qmod import IntMatrix, QMatrix, m_q, m_q_neg, q_transpose


@dataclass(frozen=True)
class QRational:
    """num/den for ``base`` on the given side, normalized so den(0) = 1.

    The right q-deformation of 1/0 is stored as (1, 0) and the left one as
    (1, 1 - q).
    """

    side: Side
    num: LaurentPoly
    den: LaurentPoly
    base: Fraction

    @property
    def pair(self) -> tuple[LaurentPoly, LaurentPoly]:
        return self.num, self.den

    def to_record(self) -> QRationalRecord:
        return QRationalRecord(
            fraction=str(self.base),
            side=self.side.value,
            num=PolyRecord(**self.num.to_json()),
            den=PolyRecord(**self.den.to_json()),
        )

    def __str__(self) -> str:
        return f"({self.num}) / ({self.den})"


def normalize_pair(
    num: LaurentPoly, den: LaurentPoly
) -> tuple[LaurentPoly, LaurentPoly]:
    """Scale both entries by the ±q^n that makes den lie in Z[q] with den(0) > 0.

    A zero denominator scales by the numerator instead.
    """
    reference = num if den.is_zero() else den
    if reference.is_zero():
        raise DomainError("0/0 is not a q-rational")
    sign, n = reference.canonical_scaling()
    return (num * sign).shift(n), (den * sign).shift(n)


def _make(
    side: Side, num: LaurentPoly, den: LaurentPoly, base: Fraction
) -> QRational:
    num, den = normalize_pair(num, den)
    return QRational(side, num, den, base)


def _closure_pair(x: Fraction, side: Side) -> tuple[LaurentPoly, LaurentPoly]:
    if not x.exceeds_one:
        raise DomainError(f"the closure route needs a fraction > 1, got {x}")
    q_r, q_s = sharp_quivers(x) if side is Side.RIGHT else flat_quivers(x)
    return closure_poly(q_r, ClosureMethod.DP), closure_poly(q_s, ClosureMethod.DP)


def right_qrat(x: Fraction, route: Route = Route.REGULAR_CF) -> QRational:
    """[r/s]^sharp as the first column of M_q(a) or M^-_q(c), or by closures."""
    if route is Route.CLOSURE:
        return _make(Side.RIGHT, *_closure_pair(x, Side.RIGHT), x)
    if x.is_infinity:
        return QRational(Side.RIGHT, ONE, ZERO, x)
    if x.r == 0:
        return QRational(Side.RIGHT, ZERO, ONE, x)
    if route is Route.NEGATIVE_CF:
        m = m_q_neg(negative_cf(x).terms)
    else:
        m = m_q(regular_cf(x).terms)
    return _make(Side.RIGHT, m.a, m.c, x)


def left_qrat(x: Fraction, route: Route = Route.REGULAR_CF) -> QRational:
    """[r/s]^flat as M_q(a) applied to the column (1, 1 - q), or by closures."""
    if route is Route.CLOSURE:
        return _make(Side.LEFT, *_closure_pair(x, Side.LEFT), x)
    if route is Route.NEGATIVE_CF:
        raise DomainError("left q-rationals are computed from regular expansions")
    if x.is_infinity:
        return QRational(Side.LEFT, ONE, ONE_MINUS_Q, x)
    m = m_q(regular_cf(x).terms)
    return _make(
        Side.LEFT, m.a + m.b * ONE_MINUS_Q, m.c + m.d * ONE_MINUS_Q, x
    )


def flat_integer_numerator(n: int) -> LaurentPoly:
    """R^flat of n/1 in closed form."""
    if n > 0:
        return q_integer(n - 1) + LaurentPoly.monomial(n)
    if n == 0:
        return ONE - Q_INV
    # -q^(n-1) - q^(n+1) - q^(n+2) - ... - q^-1
    tail = q_integer(-n - 1).shift(n + 1)
    return -(LaurentPoly.monomial(n - 1) + tail)


def _require_finite(x: Fraction) -> None:
    if x.is_infinity:
        raise DomainError("1/0 is not a rational number")


def left_shift(x: Fraction, n: int) -> QRational:
    """[x + n]^flat = q^n [x]^flat + [n]_q."""
    _require_finite(x)
    num, den = left_qrat(x).pair
    return _make(
        Side.LEFT,
        num.shift(n) + signed_q_integer(n) * den,
        den,
        Fraction.of(x.r + n * x.s, x.s),
    )


def left_negate(x: Fraction) -> QRational:
    """[-x]^flat = -q^-1 [x]^flat evaluated at q^-1."""
    _require_finite(x)
    num, den = left_qrat(x).pair
    return _make(
        Side.LEFT, -(num.invert_variable().shift(-1)), den.invert_variable(), -x
    )


def left_invert(x: Fraction) -> QRational:
    """[s/r]^flat = 1 / [r/s]^flat evaluated at q^-1."""
    _require_finite(x)
    num, den = left_qrat(x).pair
    return _make(
        Side.LEFT, den.invert_variable(), num.invert_variable(), Fraction.of(x.s, x.r)
    )


def column_fraction(m: IntMatrix) -> Fraction:
    """r/s read from the first column of an integer matrix."""
    (a, _), (c, _) = m
    return Fraction.of(a, c)


def row_fraction(m: IntMatrix) -> Fraction:
    """r/v read from the first row of an integer matrix."""
    (a, b), _ = m
    return Fraction.of(a, b)


def first_column(m: QMatrix) -> tuple[LaurentPoly, LaurentPoly]:
    return m.a, m.c


def first_row_column(m: QMatrix) -> tuple[LaurentPoly, LaurentPoly]:
    """(a, q b): the first column of the q-transpose, equivalent to [r/v]^sharp."""
    transposed = q_transpose(m)
    return transposed.a, transposed.c
