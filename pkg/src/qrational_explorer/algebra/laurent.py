"""Laurent polynomials in q with integer coefficients."""

from __future__ import annotations

import dataclasses
from collections.abc import Iterable, Sequence
from fractions import Fraction
from typing import Any

from ..exceptions import CoefficientOverflowError, DomainError, NotDivisibleError

INT64_MAX = 2**63 - 1
# q-integers are stored densely, so their length is bounded
MAX_DENSE_DEGREE = 10_000


def _checked(coeffs: Iterable[int]) -> list[int]:
    values = list(coeffs)
    for c in values:
        if c > INT64_MAX or c < -INT64_MAX - 1:
            raise CoefficientOverflowError(
                f"coefficient {c} does not fit in a signed 64-bit integer"
            )
    return values


@dataclasses.dataclass(frozen=True, init=False, eq=True)
class LaurentPoly:
    """
    An element of Z[q, q^-1] stored as the exponent of its lowest term and a dense
    tuple of coefficients going up from there.

    The representation is canonical: the zero polynomial is ``(0, ())`` and
    otherwise both the first and the last coefficient are nonzero, so dataclass
    equality is polynomial equality.

    >>> str(LaurentPoly(-1, (1, 1, 1)))
    'q^-1 + 1 + q'
    """

    lowest_exp: int
    coeffs: tuple[int, ...]

    def __init__(self, lowest_exp: int, coeffs: Sequence[int]):
        values = _checked(coeffs)
        lo, hi = 0, len(values)
        while lo < hi and values[lo] == 0:
            lo += 1
        while lo < hi and values[hi - 1] == 0:
            hi -= 1

        if lo == hi:
            object.__setattr__(self, "lowest_exp", 0)
            object.__setattr__(self, "coeffs", ())
        else:
            object.__setattr__(self, "lowest_exp", lowest_exp + lo)
            object.__setattr__(self, "coeffs", tuple(values[lo:hi]))

    # construction

    @classmethod
    def zero(cls) -> LaurentPoly:
        return cls(0, ())

    @classmethod
    def one(cls) -> LaurentPoly:
        return cls(0, (1,))

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> LaurentPoly:
        return cls(exponent, (coefficient,))

    @classmethod
    def constant(cls, value: int) -> LaurentPoly:
        return cls(0, (value,))

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> LaurentPoly:
        """Build from ``{"lowest_exp": int, "coeffs": [int, ...]}``."""
        try:
            lowest = int(data["lowest_exp"])
            coeffs = [int(c) for c in data["coeffs"]]
        except (KeyError, TypeError, ValueError) as e:
            raise DomainError(f"not a polynomial record: {data!r}") from e
        return cls(lowest, coeffs)

    def to_json(self) -> dict[str, Any]:
        return {"lowest_exp": self.lowest_exp, "coeffs": list(self.coeffs)}

    # inspection

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_unit(self) -> bool:
        """True for the units ±q^n of the ring."""
        return len(self.coeffs) == 1 and self.coeffs[0] in (1, -1)

    @property
    def degree(self) -> int:
        """Exponent of the highest term (0 for the zero polynomial)."""
        if not self.coeffs:
            return 0
        return self.lowest_exp + len(self.coeffs) - 1

    def coefficient(self, exponent: int) -> int:
        index = exponent - self.lowest_exp
        if 0 <= index < len(self.coeffs):
            return self.coeffs[index]
        return 0

    def terms(self) -> Iterable[tuple[int, int]]:
        """Yield (exponent, coefficient) for every nonzero term, ascending."""
        for k, c in enumerate(self.coeffs, self.lowest_exp):
            if c:
                yield k, c

    def evaluate(self, x: int | Fraction) -> Fraction:
        """Evaluate exactly at an integer or rational point."""
        point = Fraction(x)
        return sum((c * point**k for k, c in self.terms()), Fraction(0))

    def at_one(self) -> int:
        return sum(self.coeffs)

    # ring operations

    def __add__(self, other: object) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        low = min(self.lowest_exp, other.lowest_exp)
        high = max(self.degree, other.degree)
        coeffs = [0] * (high - low + 1)
        for k, c in enumerate(self.coeffs, self.lowest_exp - low):
            coeffs[k] += c
        for k, c in enumerate(other.coeffs, other.lowest_exp - low):
            coeffs[k] += c
        return LaurentPoly(low, coeffs)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.lowest_exp, [-c for c in self.coeffs])

    def __sub__(self, other: object) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly.constant(other) - self
        return NotImplemented

    def __mul__(self, other: object) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly(self.lowest_exp, [c * other for c in self.coeffs])
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return LaurentPoly.zero()
        coeffs = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                coeffs[i + j] += a * b
        return LaurentPoly(self.lowest_exp + other.lowest_exp, coeffs)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if not self.is_unit():
                raise DomainError(f"{self} is not a unit and has no inverse")
            return LaurentPoly.monomial(-self.lowest_exp * -n, self.coeffs[0] ** -n)
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, n: int) -> LaurentPoly:
        """Multiply by q^n."""
        if not self.coeffs:
            return self
        return LaurentPoly(self.lowest_exp + n, self.coeffs)

    def invert_variable(self) -> LaurentPoly:
        """Substitute q -> q^-1."""
        if not self.coeffs:
            return self
        return LaurentPoly(-self.degree, self.coeffs[::-1])

    # the equivalence f = ±q^n g

    def canonical_scaling(self) -> tuple[int, int]:
        """The unique (sign, n) putting sign * q^n * self in Z[q] with a positive
        constant term. The zero polynomial returns (1, 0)."""
        if not self.coeffs:
            return 1, 0
        sign = 1 if self.coeffs[0] > 0 else -1
        return sign, -self.lowest_exp

    def canonical(self) -> LaurentPoly:
        if not self.coeffs:
            return self
        sign, _ = self.canonical_scaling()
        return LaurentPoly(0, [sign * c for c in self.coeffs])

    def equiv(self, other: LaurentPoly) -> tuple[int, int] | None:
        """Return (sign, n) with self = sign * q^n * other, or None."""
        if not self.coeffs or not other.coeffs:
            return (1, 0) if not self.coeffs and not other.coeffs else None
        if len(self.coeffs) != len(other.coeffs):
            return None
        n = self.lowest_exp - other.lowest_exp
        if self.coeffs == other.coeffs:
            return 1, n
        if all(a == -b for a, b in zip(self.coeffs, other.coeffs, strict=True)):
            return -1, n
        return None

    def reciprocal(self) -> LaurentPoly:
        """f^v: move f into Z[q] with a nonzero constant term, then reverse.

        The sign is kept, so ``1 - q^-1`` becomes ``q - 1`` and then ``1 - q``.
        """
        if not self.coeffs:
            raise DomainError("the zero polynomial has no reciprocal")
        return LaurentPoly(0, self.coeffs[::-1])

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def is_antipalindromic(self) -> bool:
        return self.coeffs == tuple(-c for c in reversed(self.coeffs))

    def divide_one_minus_q(self) -> LaurentPoly:
        """Exact quotient by (1 - q).

        Raises:
            NotDivisibleError: If f(1) != 0
        """
        if not self.coeffs:
            return self
        remainder = self.at_one()
        if remainder != 0:
            raise NotDivisibleError(
                f"{self} is not divisible by 1 - q (value {remainder} at q = 1)"
            )
        # (1 - q) g = f gives g_k = f_0 + ... + f_k
        quotient = []
        running = 0
        for c in self.coeffs[:-1]:
            running += c
            quotient.append(running)
        return LaurentPoly(self.lowest_exp, _checked(quotient))

    def coefficient_vector(self) -> list[int]:
        """Coefficients of the canonical representative, constant term first."""
        return list(self.canonical().coeffs)

    def modality(self) -> int:
        """Minimal number of contiguous unimodal blocks covering the coefficients.

        Interior zeros count as values, so 1 + q^3 has modality 2.
        """
        if not self.coeffs:
            raise DomainError("modality of the zero polynomial is undefined")
        return modality(self.coeffs)

    # text

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for k, c in self.terms():
            magnitude = abs(c)
            if k == 0:
                body = str(magnitude)
            else:
                var = "q" if k == 1 else f"q^{k}"
                body = var if magnitude == 1 else f"{magnitude}{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly('{self}')"


Q = LaurentPoly.monomial(1)
Q_INV = LaurentPoly.monomial(-1)
ONE = LaurentPoly.one()
ZERO = LaurentPoly.zero()
ONE_MINUS_Q = LaurentPoly(0, (1, -1))


def q_integer(n: int) -> LaurentPoly:
    """[n]_q = 1 + q + ... + q^(n-1); [0]_q = 0."""
    if n < 0:
        raise DomainError(f"q-integer of a negative number {n}")
    if n > MAX_DENSE_DEGREE:
        raise DomainError(
            f"[{n}]_q has {n} terms; exponents are limited to {MAX_DENSE_DEGREE}"
        )
    return LaurentPoly(0, [1] * n)


def signed_q_integer(n: int) -> LaurentPoly:
    """(1 - q^n) / (1 - q) for any integer n."""
    if n >= 0:
        return q_integer(n)
    return -(q_integer(-n).shift(n))


def modality(values: Sequence[int]) -> int:
    """Greedy block count: cut when a strict rise follows a strict fall."""
    if not values:
        raise DomainError("modality of an empty sequence is undefined")
    blocks = 1
    falling = False
    previous = values[0]
    for value in values[1:]:
        if falling and value > previous:
            blocks += 1
            falling = False
        elif value < previous:
            falling = True
        previous = value
    return blocks


def is_unimodal(values: Sequence[int]) -> bool:
    return modality(values) == 1
