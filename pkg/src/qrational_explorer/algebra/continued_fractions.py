"""Irreducible fractions, regular and negative continued fractions."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction as ExactRational

from ..exceptions import DomainError
from ..models import CFKind

_FRACTION_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(-?\d+)\s*)?$")


@dataclass(frozen=True)
class Fraction:
    """An irreducible fraction r/s with s >= 0, including the formal point 1/0.

    Use :meth:`of` to reduce arbitrary numerator/denominator pairs; the plain
    constructor only accepts values that are already normalized.
    """

    r: int
    s: int

    def __post_init__(self) -> None:
        if self.s < 0:
            raise DomainError(f"denominator of {self.r}/{self.s} is negative")
        if self.s == 0 and self.r != 1:
            raise DomainError("the only fraction with denominator 0 is 1/0")
        if math.gcd(self.r, self.s) != 1:
            raise DomainError(f"{self.r}/{self.s} is not reduced")

    @classmethod
    def of(cls, r: int, s: int = 1) -> Fraction:
        if r == 0 and s == 0:
            raise DomainError("0/0 is not a fraction")
        if s == 0:
            return cls(1, 0)
        if s < 0:
            r, s = -r, -s
        g = math.gcd(r, s)
        return cls(r // g, s // g)

    @classmethod
    def parse(cls, text: str) -> Fraction:
        match = _FRACTION_RE.match(text)
        if not match:
            raise DomainError(f"'{text}' is not a fraction of the form r/s")
        r = int(match.group(1))
        s = int(match.group(2)) if match.group(2) is not None else 1
        return cls.of(r, s)

    @property
    def is_infinity(self) -> bool:
        return self.s == 0

    @property
    def exceeds_one(self) -> bool:
        return self.s > 0 and self.r > self.s

    def as_exact(self) -> ExactRational:
        if self.is_infinity:
            raise DomainError("1/0 has no rational value")
        return ExactRational(self.r, self.s)

    def __neg__(self) -> Fraction:
        if self.is_infinity:
            return self
        return Fraction(-self.r, self.s)

    def __str__(self) -> str:
        return f"{self.r}/{self.s}"


INFINITY = Fraction(1, 0)
ZERO = Fraction(0, 1)


@dataclass(frozen=True)
class ContinuedFraction:
    kind: CFKind
    terms: tuple[int, ...]

    def __str__(self) -> str:
        body = ",".join(str(t) for t in self.terms)
        if self.kind is CFKind.NEGATIVE:
            return f"[[{body}]]"
        return f"[{body}]"


def cf_from_text(text: str) -> ContinuedFraction:
    """Parse "[1,2,1,2]" (regular) or "[[2,2]]" (negative)."""
    stripped = text.strip()
    if stripped.startswith("[[") and stripped.endswith("]]"):
        kind, body = CFKind.NEGATIVE, stripped[2:-2]
    elif stripped.startswith("[") and stripped.endswith("]"):
        kind, body = CFKind.REGULAR, stripped[1:-1]
    else:
        raise DomainError(f"'{text}' is not a continued fraction")
    try:
        terms = tuple(int(t) for t in body.split(",") if t.strip())
    except ValueError as e:
        raise DomainError(f"'{text}' has a non-integer term") from e
    return ContinuedFraction(kind, terms)


def _euclid_terms(r: int, s: int) -> list[int]:
    """Floor quotients of r/s > 0; the last one is >= 2 unless there is one term."""
    terms = []
    while s:
        a, rem = divmod(r, s)
        terms.append(a)
        r, s = s, rem
    return terms


def regular_cf(x: Fraction) -> ContinuedFraction:
    """The unique even-length regular expansion [a_1, ..., a_2m] of x."""
    if x.is_infinity:
        return ContinuedFraction(CFKind.REGULAR, ())
    if x.r == 0:
        return ContinuedFraction(CFKind.REGULAR, (-1, 1))
    if x.r < 0:
        positive = regular_cf(-x)
        return ContinuedFraction(CFKind.REGULAR, tuple(-a for a in positive.terms))
    cf = ContinuedFraction(CFKind.REGULAR, tuple(_euclid_terms(x.r, x.s)))
    if len(cf.terms) % 2:
        cf = cf_parity_convert(cf)
    return cf


def regular_cf_odd(x: Fraction) -> ContinuedFraction:
    """The odd-length regular expansion of x (x not 1/0 or 0/1)."""
    if x.is_infinity or x.r == 0:
        raise DomainError(f"{x} has no odd-length expansion")
    return cf_parity_convert(regular_cf(x))


def negative_cf(x: Fraction) -> ContinuedFraction:
    """The negative (Hirzebruch-Jung) expansion [[c_1, ..., c_k]] of x."""
    if x.is_infinity:
        return ContinuedFraction(CFKind.NEGATIVE, ())
    if x.r == 0:
        return ContinuedFraction(CFKind.NEGATIVE, (1, 1))
    if x.r < 0:
        positive = negative_cf(-x)
        return ContinuedFraction(CFKind.NEGATIVE, tuple(-c for c in positive.terms))

    terms = []
    r, s = x.r, x.s
    while s:
        # x = c - 1/x' with c the ceiling of x
        c = -(-r // s)
        terms.append(c)
        r, s = s, c * s - r
    return ContinuedFraction(CFKind.NEGATIVE, tuple(terms))


def eval_cf(cf: ContinuedFraction) -> Fraction:
    """Fold-right evaluation with exact rationals; [] is 1/0.

    Raises:
        DomainError: If the fold divides by zero
    """
    value: ExactRational | None = None
    for term in reversed(cf.terms):
        if value is None:
            tail = ExactRational(0)
        elif value == 0:
            raise DomainError(f"{cf} divides by zero")
        else:
            tail = 1 / value
        value = term + tail if cf.kind is CFKind.REGULAR else term - tail
    if value is None:
        return INFINITY
    return Fraction.of(value.numerator, value.denominator)


def cf_parity_convert(cf: ContinuedFraction) -> ContinuedFraction:
    """Toggle between [..., a_n + 1] and [..., a_n, 1] (signs mirrored for x < 0)."""
    if cf.kind is not CFKind.REGULAR:
        raise DomainError("parity conversion applies to regular expansions only")
    terms = list(cf.terms)
    if not terms:
        raise DomainError("the empty expansion has no parity partner")
    last = terms[-1]
    if len(terms) >= 2 and last in (1, -1):
        previous = terms[-2]
        if previous * last < 0:
            raise DomainError(f"merging the tail of {cf} breaks the sign convention")
        return ContinuedFraction(CFKind.REGULAR, (*terms[:-2], previous + last))
    if last == 0:
        raise DomainError(f"the sign of the tail of {cf} is ambiguous")
    step = 1 if last > 0 else -1
    return ContinuedFraction(CFKind.REGULAR, (*terms[:-1], last - step, step))


def cf_matrix(terms: tuple[int, ...] | list[int]) -> tuple[tuple[int, int], ...]:
    """M(a_1, ..., a_2m) = R^a1 L^a2 ... over the integers."""
    if len(terms) % 2:
        raise DomainError("M(a) needs an even number of terms")
    a, b, c, d = 1, 0, 0, 1
    for i, t in enumerate(terms):
        if i % 2 == 0:
            # right multiplication by R^t = [[1, t], [0, 1]]
            b, d = a * t + b, c * t + d
        else:
            # right multiplication by L^t = [[1, 0], [t, 1]]
            a, c = a + b * t, c + d * t
    return ((a, b), (c, d))


def schubert_equivalent(x: Fraction, y: Fraction) -> bool:
    """Schubert's classification of rational links L(r/s), L(r'/s')."""
    if not (x.exceeds_one and y.exceeds_one):
        raise DomainError("Schubert equivalence is defined for fractions > 1")
    if x.r != y.r:
        return False
    r = x.r
    return (x.s - y.s) % r == 0 or (x.s * y.s - 1) % r == 0
