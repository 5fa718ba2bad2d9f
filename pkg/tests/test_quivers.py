"""Tests for fence quivers and closure polynomials."""

import pytest

from qrational_explorer.algebra.continued_fractions import Fraction
from qrational_explorer.algebra.laurent import LaurentPoly
from qrational_explorer.algebra.qmod import canonical_trace, m_q
from qrational_explorer.combinatorics.quivers import (
    ArrowDirection,
    Quiver,
    circular_fence,
    closure_poly,
    closure_table,
    fence_quiver,
    flat_quiver,
    flat_quivers,
    odd_flat_quivers,
    odd_sharp_quivers,
    opposite,
    rank_poly,
    sharp_quivers,
)
from qrational_explorer.exceptions import DomainError, QuiverError
from qrational_explorer.models import ClosureMethod
from qrational_explorer.verification.suites import btuples

BRUTE = ClosureMethod.BRUTE_FORCE


def poly(*coeffs):
    return LaurentPoly(0, coeffs)


class TestConstruction:
    """Test how fence, flat and circular quivers are laid out."""

    def test_fence_runs_alternate(self):
        """Test Q(1, 2): one left arrow, then two right arrows."""
        quiver = fence_quiver((1, 2))

        assert quiver.n_vertices == 4
        assert quiver.arrows == ((1, 0), (1, 2), (2, 3))
        assert quiver.shape.directions == (
            ArrowDirection.LEFT,
            ArrowDirection.RIGHT,
            ArrowDirection.RIGHT,
        )

    def test_flat_adds_two_cycle(self):
        """Test that Q^flat(b) adds w with a 2-cycle on the last vertex."""
        quiver = flat_quiver((1, 2, 0))

        assert quiver.n_vertices == 5
        assert quiver.arrows[-2:] == ((3, 4), (4, 3))

    def test_circular_fence_closes_the_chain(self):
        """Test that the last arrow of a circular fence returns to vertex 0."""
        quiver = circular_fence((1, 1))

        assert quiver.n_vertices == 2
        assert quiver.arrows == ((1, 0), (1, 0))

    @pytest.mark.parametrize("b", [(), (-1, 2), (1, 0, 1)])
    def test_invalid_btuples(self, b):
        """Test that empty tuples, negative ends and zero interiors are rejected."""
        with pytest.raises(DomainError):
            fence_quiver(b)

    def test_invalid_circular_tuple(self):
        """Test that circular fences need an even positive tuple."""
        with pytest.raises(DomainError):
            circular_fence((1, 2, 3))

    def test_arrow_out_of_range(self):
        """Test that arrows must stay inside the vertex set."""
        with pytest.raises(QuiverError):
            Quiver(2, ((0, 2),))

    def test_opposite_reverses_arrows(self):
        """Test Q^op."""
        quiver = opposite(fence_quiver((1, 1)))

        assert quiver.arrows == ((0, 1), (2, 1))
        assert quiver.shape.directions == (ArrowDirection.RIGHT, ArrowDirection.LEFT)

    def test_text_form(self):
        """Test the 1-based edges form."""
        assert str(fence_quiver((1, 1))) == "edges:3;2>1,2>3"


class TestClosurePolynomials:
    """Test closure counting by DP and brute force."""

    def test_fence_one_one(self):
        """Test cl(Q(1, 1)) = 1 + 2q + q^2 + q^3."""
        assert closure_poly(fence_quiver((1, 1))) == poly(1, 2, 1, 1)

    def test_flat_quivers_of_the_closure_table(self):
        """Test cl(Q^flat(1,2,0)) = cl(Q^flat(0,2,1)) = 1+q+q^2+2q^3+q^4+q^5."""
        expected = poly(1, 1, 1, 2, 1, 1)

        assert closure_poly(flat_quiver((1, 2, 0))) == expected
        assert closure_poly(flat_quiver((0, 2, 1))) == expected
        assert closure_poly(flat_quiver((1, 2, 0)), BRUTE) == expected

    def test_flat_quiver_of_eleven_eighths(self):
        """Test cl(Q^flat(0,2,1,1)) = R^flat of 11/8."""
        expected = poly(1, 1, 2, 2, 2, 2, 1)

        assert closure_poly(flat_quiver((0, 2, 1, 1))) == expected

    def test_empty_quiver(self):
        """Test that the empty quiver has the single closure {}."""
        assert closure_poly(Quiver.empty()) == poly(1)
        assert closure_poly(Quiver.empty(), BRUTE) == poly(1)

    def test_dp_needs_chain_structure(self):
        """Test that the DP refuses a quiver given by edges."""
        with pytest.raises(QuiverError):
            closure_poly(Quiver(2, ((0, 1),)))

    def test_brute_force_cap(self):
        """Test that brute force stops above the vertex cap."""
        with pytest.raises(QuiverError, match="capped at 3"):
            closure_poly(fence_quiver((4,)), BRUTE, max_vertices=3)

    def test_brute_force_on_edges(self):
        """Test a 2-cycle: closures are {} and both vertices."""
        quiver = Quiver(2, ((0, 1), (1, 0)))

        assert closure_poly(quiver, BRUTE) == poly(1, 0, 1)

    @pytest.mark.parametrize("b", btuples(7))
    def test_dp_matches_brute_force(self, b):
        """Test the DP against enumeration for small fence and flat quivers."""
        for quiver in (fence_quiver(b), flat_quiver(b)):
            assert closure_poly(quiver) == closure_poly(quiver, BRUTE)
            reversed_quiver = opposite(quiver)
            assert closure_poly(reversed_quiver) == closure_poly(reversed_quiver, BRUTE)

    @pytest.mark.parametrize("a", [(1, 1), (2, 1), (1, 2, 1, 1), (3, 3)])
    def test_circular_fence_is_trace(self, a):
        """Test cl(circular fence of a) = canonical trace of M_q(a)."""
        quiver = circular_fence(a)

        assert closure_poly(quiver) == canonical_trace(m_q(a))
        assert closure_poly(quiver, BRUTE) == closure_poly(quiver)

    @pytest.mark.parametrize("b", [(1, 1), (1, 2), (0, 3, 2), (2, 1, 1)])
    def test_rank_poly_matches_closures(self, b):
        """Test the antichain enumeration against the closure DP."""
        quiver = fence_quiver(b)

        assert rank_poly(quiver) == closure_poly(quiver)

    def test_rank_poly_needs_acyclic_quiver(self):
        """Test that a cycle is not a poset."""
        with pytest.raises(QuiverError):
            rank_poly(flat_quiver((1, 1)))


class TestClosureTable:
    """Test the per-size closure listing."""

    def test_table_of_flat_one_two_zero(self):
        """Test the six rows with counts 1, 1, 1, 2, 1, 1."""
        rows = closure_table(flat_quiver((1, 2, 0)))

        assert [row.count for row in rows] == [1, 1, 1, 2, 1, 1]
        assert rows[0].closures == ((),)
        assert rows[3].closures == ((1, 4, 5), (3, 4, 5))
        assert rows[5].closures == ((1, 2, 3, 4, 5),)


class TestFractionQuivers:
    """Test the quivers attached to a fraction > 1."""

    def test_sharp_quivers_of_eleven_eighths(self):
        """Test that the sharp closures give [11/8]^sharp."""
        q_r, q_s = sharp_quivers(Fraction(11, 8))

        assert q_r == fence_quiver((0, 2, 1, 1))
        assert closure_poly(q_r).at_one() == 11
        assert closure_poly(q_s).at_one() == 8

    def test_flat_quivers_of_eleven_eighths(self):
        """Test that the flat closures give R^flat and S^flat of 11/8."""
        q_r, q_s = flat_quivers(Fraction(11, 8))

        assert closure_poly(q_r) == poly(1, 1, 2, 2, 2, 2, 1)
        assert closure_poly(q_s) == poly(1, 1, 2, 1, 2, 1)

    def test_odd_expansion_builds_the_same_quivers(self):
        """Test that the odd-length expansion gives identical quivers."""
        x = Fraction(11, 8)

        assert odd_sharp_quivers(x) == sharp_quivers(x)
        assert odd_flat_quivers(x) == flat_quivers(x)

    def test_integers_have_no_odd_quivers(self):
        """Test that n/1 is rejected by the odd constructions."""
        with pytest.raises(DomainError):
            odd_sharp_quivers(Fraction(5, 1))

    def test_fractions_below_one_are_rejected(self):
        """Test that quivers need x > 1."""
        with pytest.raises(DomainError):
            flat_quivers(Fraction(3, 4))
