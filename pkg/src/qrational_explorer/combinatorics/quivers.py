"""Fence, flat and circular fence quivers and their closure polynomials.

A closure is a vertex set C such that no arrow leaves C: whenever the source of
an arrow is in C so is its target. The closure polynomial counts closures by
size (flat quivers weight the merged 2-cycle vertex by 2).
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..algebra.continued_fractions import Fraction, regular_cf, regular_cf_odd
from ..algebra.laurent import ONE, LaurentPoly
from ..exceptions import DomainError, QuiverError
from ..models import ClosureMethod

DEFAULT_MAX_VERTICES = 24
_CHUNK = 1 << 16

logger = logging.getLogger(__name__)


class ArrowDirection(Enum):
    """Orientation of a chain arrow between vertex i and vertex i + 1."""

    LEFT = "left"  # i + 1 -> i
    RIGHT = "right"  # i -> i + 1

    def flipped(self) -> ArrowDirection:
        if self is ArrowDirection.LEFT:
            return ArrowDirection.RIGHT
        return ArrowDirection.LEFT


@dataclass(frozen=True)
class ChainShape:
    """How a quiver was built: one direction per chain arrow, plus extras.

    ``tail_cycle`` adds a vertex w with a 2-cycle to the last chain vertex;
    ``circular`` closes the chain with one more arrow back to vertex 0, in which
    case there are as many directions as vertices.
    """

    directions: tuple[ArrowDirection, ...]
    tail_cycle: bool = False
    circular: bool = False

    @property
    def chain_length(self) -> int:
        if self.circular:
            return len(self.directions)
        return len(self.directions) + 1


@dataclass(frozen=True)
class Quiver:
    n_vertices: int
    arrows: tuple[tuple[int, int], ...]
    shape: ChainShape | None = None

    def __post_init__(self) -> None:
        if self.n_vertices < 0:
            raise QuiverError("a quiver cannot have a negative number of vertices")
        for source, target in self.arrows:
            if not (0 <= source < self.n_vertices and 0 <= target < self.n_vertices):
                raise QuiverError(
                    f"arrow {source}->{target} leaves a quiver with "
                    f"{self.n_vertices} vertices"
                )

    @classmethod
    def empty(cls) -> Quiver:
        return cls(0, (), ChainShape(()))

    @classmethod
    def from_shape(cls, shape: ChainShape) -> Quiver:
        n_chain = shape.chain_length
        arrows: list[tuple[int, int]] = []
        for i, direction in enumerate(shape.directions):
            j = (i + 1) % n_chain
            arrows.append((j, i) if direction is ArrowDirection.LEFT else (i, j))
        n = n_chain
        if shape.tail_cycle:
            last, w = n_chain - 1, n_chain
            arrows.extend(((last, w), (w, last)))
            n += 1
        return cls(n, tuple(arrows), shape)

    def __str__(self) -> str:
        body = ",".join(f"{s + 1}>{t + 1}" for s, t in self.arrows)
        return f"edges:{self.n_vertices};{body}"


def _check_btuple(b: Sequence[int]) -> None:
    if not b:
        raise DomainError("a fence needs at least one run length")
    if b[0] < 0 or b[-1] < 0:
        raise DomainError(f"end runs of {tuple(b)} must be >= 0")
    if any(x <= 0 for x in b[1:-1]):
        raise DomainError(f"interior runs of {tuple(b)} must be > 0")


def _run_directions(runs: Sequence[int]) -> tuple[ArrowDirection, ...]:
    """Odd-numbered runs point left, even-numbered runs point right."""
    directions: list[ArrowDirection] = []
    for index, length in enumerate(runs):
        direction = ArrowDirection.LEFT if index % 2 == 0 else ArrowDirection.RIGHT
        directions.extend([direction] * length)
    return tuple(directions)


def fence_quiver(b: Sequence[int]) -> Quiver:
    """Q(b): 1 + sum(b) vertices on a line with alternating runs of arrows."""
    _check_btuple(b)
    return Quiver.from_shape(ChainShape(_run_directions(b)))


def flat_quiver(b: Sequence[int]) -> Quiver:
    """Q^flat(b): Q(b) plus a vertex w forming a 2-cycle with the last vertex."""
    _check_btuple(b)
    return Quiver.from_shape(ChainShape(_run_directions(b), tail_cycle=True))


def circular_fence(a: Sequence[int]) -> Quiver:
    if not a or len(a) % 2 or any(x <= 0 for x in a):
        raise DomainError(
            f"circular fences need an even, positive tuple, got {tuple(a)}"
        )
    return Quiver.from_shape(ChainShape(_run_directions(a), circular=True))


def opposite(quiver: Quiver) -> Quiver:
    shape = None
    if quiver.shape is not None:
        shape = ChainShape(
            tuple(d.flipped() for d in quiver.shape.directions),
            quiver.shape.tail_cycle,
            quiver.shape.circular,
        )
    return Quiver(quiver.n_vertices, tuple((t, s) for s, t in quiver.arrows), shape)


def _drop_leading(quiver: Quiver, count: int) -> Quiver:
    """Delete the first ``count`` chain vertices (and their arrows)."""
    shape = quiver.shape
    if shape is None or shape.circular:
        raise QuiverError("only linear chain quivers can be truncated")
    if count >= shape.chain_length:
        return Quiver.empty()
    return Quiver.from_shape(ChainShape(shape.directions[count:], shape.tail_cycle))


def _require_above_one(x: Fraction) -> None:
    if not x.exceeds_one:
        raise DomainError(f"quivers of {x} are defined for fractions > 1 only")


def _runs_from_terms(terms: Sequence[int]) -> list[int]:
    runs = list(terms)
    runs[0] -= 1
    runs[-1] -= 1
    return runs


def _quiver_pair(terms: Sequence[int], tail_cycle: bool) -> tuple[Quiver, Quiver]:
    runs = _runs_from_terms(terms)
    build = flat_quiver if tail_cycle else fence_quiver
    q_r = build(runs)
    return q_r, _drop_leading(q_r, terms[0])


def sharp_quivers(x: Fraction) -> tuple[Quiver, Quiver]:
    """(Q^{sharp,R}, Q^{sharp,S}) of x > 1."""
    _require_above_one(x)
    return _quiver_pair(regular_cf(x).terms, tail_cycle=False)


def flat_quivers(x: Fraction) -> tuple[Quiver, Quiver]:
    """(Q^{flat,R}, Q^{flat,S}) of x > 1."""
    _require_above_one(x)
    return _quiver_pair(regular_cf(x).terms, tail_cycle=True)


def _odd_terms(x: Fraction) -> tuple[int, ...]:
    _require_above_one(x)
    if x.s == 1:
        raise DomainError(f"{x} is an integer; its odd expansion has a single term")
    return regular_cf_odd(x).terms


def odd_sharp_quivers(x: Fraction) -> tuple[Quiver, Quiver]:
    return _quiver_pair(_odd_terms(x), tail_cycle=False)


def odd_flat_quivers(x: Fraction) -> tuple[Quiver, Quiver]:
    return _quiver_pair(_odd_terms(x), tail_cycle=True)


# counting


def _linear_dp(
    directions: Sequence[ArrowDirection],
    weights: Sequence[int],
    start: tuple[LaurentPoly, LaurentPoly],
) -> tuple[LaurentPoly, LaurentPoly]:
    """Transfer (out, in) generating functions along a chain."""
    out_poly, in_poly = start
    for direction, weight in zip(directions, weights[1:], strict=False):
        both = out_poly + in_poly
        if direction is ArrowDirection.RIGHT:
            # v_i in C forces v_{i+1} in C
            out_poly, in_poly = out_poly, both.shift(weight)
        else:
            out_poly, in_poly = both, in_poly.shift(weight)
    return out_poly, in_poly


def _closure_dp(quiver: Quiver) -> LaurentPoly:
    shape = quiver.shape
    if shape is None:
        raise QuiverError("the DP needs a fence, flat or circular fence quiver")
    n_chain = shape.chain_length if quiver.n_vertices else 0
    if n_chain == 0:
        return ONE

    weights = [1] * n_chain
    if shape.tail_cycle:
        weights[-1] = 2
    first = LaurentPoly.monomial(weights[0])

    if not shape.circular:
        out_poly, in_poly = _linear_dp(shape.directions, weights, (ONE, first))
        return out_poly + in_poly

    *inner, closing = shape.directions
    total = LaurentPoly.zero()
    zero = LaurentPoly.zero()
    # v0 out: a right closing arrow v_last -> v0 forces v_last out
    out_poly, in_poly = _linear_dp(inner, weights, (ONE, zero))
    total = total + out_poly
    if closing is ArrowDirection.LEFT:
        total = total + in_poly
    # v0 in: a left closing arrow v0 -> v_last forces v_last in
    out_poly, in_poly = _linear_dp(inner, weights, (zero, first))
    total = total + in_poly
    if closing is ArrowDirection.RIGHT:
        total = total + out_poly
    return total


def _closure_masks(quiver: Quiver, max_vertices: int) -> Iterator[np.ndarray]:
    """Yield chunks of the bitmasks of all closures, ascending."""
    n = quiver.n_vertices
    if n > max_vertices:
        raise QuiverError(
            f"brute force is capped at {max_vertices} vertices, quiver has {n}"
        )
    total = 1 << n
    for start in range(0, total, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        ok = np.ones(masks.shape, dtype=bool)
        for source, target in quiver.arrows:
            leaves = ((masks >> source) & 1).astype(bool) & ~(
                ((masks >> target) & 1).astype(bool)
            )
            ok &= ~leaves
        yield masks[ok]


def _popcount(masks: np.ndarray, n: int) -> np.ndarray:
    counts = np.zeros(masks.shape, dtype=np.int64)
    for bit in range(n):
        counts += (masks >> bit) & 1
    return counts


def _closure_brute_force(quiver: Quiver, max_vertices: int) -> LaurentPoly:
    n = quiver.n_vertices
    counts = np.zeros(n + 1, dtype=np.int64)
    for masks in _closure_masks(quiver, max_vertices):
        counts += np.bincount(_popcount(masks, n), minlength=n + 1)
    return LaurentPoly(0, [int(c) for c in counts])


def closure_poly(
    quiver: Quiver,
    method: ClosureMethod = ClosureMethod.DP,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> LaurentPoly:
    """cl(Q; q) = sum over closures C of q^|C|.

    Raises:
        QuiverError: If brute force exceeds ``max_vertices`` or the DP is asked
            for a quiver without chain structure
    """
    if method is ClosureMethod.DP:
        return _closure_dp(quiver)
    return _closure_brute_force(quiver, max_vertices)


@dataclass(frozen=True)
class ClosureRow:
    """All closures of one size, as sorted tuples of 1-based vertices."""

    size: int
    closures: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.closures)


def closure_table(
    quiver: Quiver, max_vertices: int = DEFAULT_MAX_VERTICES
) -> list[ClosureRow]:
    n = quiver.n_vertices
    by_size: list[list[tuple[int, ...]]] = [[] for _ in range(n + 1)]
    for masks in _closure_masks(quiver, max_vertices):
        for mask in masks.tolist():
            members = tuple(v + 1 for v in range(n) if mask >> v & 1)
            by_size[len(members)].append(members)
    return [ClosureRow(size, tuple(sorted(rows))) for size, rows in enumerate(by_size)]


def _reachability(quiver: Quiver) -> list[int]:
    """reach[v]: bitmask of vertices reachable from v by a path of length >= 1."""
    n = quiver.n_vertices
    reach = [0] * n
    for source, target in quiver.arrows:
        reach[source] |= 1 << target
    changed = True
    while changed:
        changed = False
        for v in range(n):
            extended = reach[v]
            for u in range(n):
                if reach[v] >> u & 1:
                    extended |= reach[u]
            if extended != reach[v]:
                reach[v] = extended
                changed = True
    return reach


def rank_poly(quiver: Quiver) -> LaurentPoly:
    """Count lower order ideals by size through their antichains of maximal elements.

    The order is a < b iff there is a path b -> a, so lower order ideals are
    exactly the closures. Only acyclic quivers define a poset.
    """
    n = quiver.n_vertices
    reach = _reachability(quiver)
    if any(reach[v] >> v & 1 for v in range(n)):
        raise QuiverError("rank polynomials need an acyclic quiver")
    down = [reach[v] | 1 << v for v in range(n)]
    counts = [0] * (n + 1)

    def extend(start: int, chosen: list[int], ideal: int) -> None:
        counts[ideal.bit_count()] += 1
        for v in range(start, n):
            if any(reach[v] >> u & 1 or reach[u] >> v & 1 for u in chosen):
                continue
            chosen.append(v)
            extend(v + 1, chosen, ideal | down[v])
            chosen.pop()

    extend(0, [], 0)
    return LaurentPoly(0, counts)
