"""Tests for the q-deformed modular group."""

import logging
from unittest.mock import Mock

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qrational_explorer.algebra.laurent import ONE, Q, Q_INV, ZERO, LaurentPoly
from qrational_explorer.algebra.qmod import (
    QMatrix,
    TraceType,
    canonical_trace,
    det,
    format_word,
    generators,
    inverse,
    is_group_element,
    m_q,
    matrix_equiv,
    normalize_word,
    orthogonal_q_transpose,
    orthogonal_word,
    power,
    q_transpose,
    recognize,
    reduce_trace_type,
    trace,
    trace_type_polynomial,
    transpose_word,
    word_to_matrix,
)
from qrational_explorer.exceptions import (
    DomainError,
    RecognitionError,
    TraceReductionError,
)
from qrational_explorer.models import Gen, TraceTypeKind

R_Q, S_Q, L_Q = generators()

letters = st.one_of(
    st.tuples(
        st.sampled_from([Gen.R, Gen.L]),
        st.integers(min_value=-5, max_value=5).filter(bool),
    ),
    st.just((Gen.S, 1)),
)
words = st.lists(letters, max_size=12).map(tuple)


def poly(lowest_exp, *coeffs):
    return LaurentPoly(lowest_exp, coeffs)


class TestGenerators:
    """Test R_q, S_q, L_q and their powers."""

    def test_generator_entries(self):
        """Test the generator matrices entry by entry."""
        assert R_Q == QMatrix(Q, ONE, ZERO, ONE)
        assert S_Q == QMatrix(ZERO, -Q_INV, ONE, ZERO)
        assert L_Q == QMatrix(ONE, ZERO, ONE, Q_INV)

    def test_l_from_r_and_s(self):
        """Test L_q = q^-1 R_q S_q R_q."""
        assert (R_Q @ S_Q @ R_Q).scale(Q_INV) == L_Q

    def test_s_squared_is_projectively_trivial(self):
        """Test S_q^2 = -q^-1 Id."""
        assert S_Q @ S_Q == QMatrix.identity().scale(-Q_INV)
        assert matrix_equiv(S_Q @ S_Q, QMatrix.identity()) == (-1, -1)

    def test_evaluation_at_one(self):
        """Test that the generators specialize to R, S, L."""
        assert R_Q.evaluate_at_one() == ((1, 1), (0, 1))
        assert S_Q.evaluate_at_one() == ((0, -1), (1, 0))
        assert L_Q.evaluate_at_one() == ((1, 0), (1, 1))

    def test_inverse_of_r(self):
        """Test power(R_q, -1) = [[q^-1, -q^-1], [0, 1]]."""
        assert power(R_Q, -1) == QMatrix(Q_INV, -Q_INV, ZERO, ONE)
        assert power(R_Q, -1) @ R_Q == QMatrix.identity()

    def test_square_of_l(self):
        """Test power(L_q, 2) = [[1, 0], [1 + q^-1, q^-2]]."""
        assert power(L_Q, 2) == QMatrix(ONE, ZERO, ONE + Q_INV, poly(-2, 1))

    def test_zeroth_power(self):
        """Test power(S_q, 0) = Id."""
        assert power(S_Q, 0) == QMatrix.identity()

    def test_inverse_of_s(self):
        """Test that S_q is invertible over Z[q, q^-1]."""
        assert inverse(S_Q) @ S_Q == QMatrix.identity()

    def test_non_invertible_power_is_rejected(self):
        """Test that a non-unit determinant blocks negative powers."""
        m = QMatrix(ONE + Q, ZERO, ZERO, ONE)

        with pytest.raises(DomainError):
            power(m, -1)

    @pytest.mark.parametrize("n", [-3, -1, 2, 4])
    def test_closed_forms_match_repeated_products(self, n):
        """Test that word powers agree with matrix powers."""
        assert word_to_matrix(((Gen.R, n),)) == power(R_Q, n)
        assert word_to_matrix(((Gen.L, n),)) == power(L_Q, n)


class TestWords:
    """Test generator words and M_q."""

    def test_normalize_word(self):
        """Test merging, dropping zeros and the S exponent rule."""
        word = ((Gen.R, 1), (Gen.R, 2), (Gen.L, 0), (Gen.S, 1), (Gen.S, 1))

        assert normalize_word(word) == ((Gen.R, 3), (Gen.S, 1), (Gen.S, 1))
        with pytest.raises(DomainError):
            normalize_word(((Gen.S, 2),))

    def test_m_q_of_one_one(self):
        """Test M_q(1, 1) = [[q + 1, q^-1], [1, q^-1]]."""
        assert m_q((1, 1)) == QMatrix(ONE + Q, Q_INV, ONE, Q_INV)

    def test_m_q_of_empty_tuple(self):
        """Test M_q() = Id."""
        assert m_q(()) == QMatrix.identity()

    def test_m_q_rejects_odd_length(self):
        """Test that M_q needs an even number of terms."""
        with pytest.raises(DomainError):
            m_q((1, 2, 3))

    def test_word_is_recorded(self):
        """Test that products carry their word."""
        assert m_q((1, 2, 1, 2)).word == (
            (Gen.R, 1),
            (Gen.L, 2),
            (Gen.R, 1),
            (Gen.L, 2),
        )
        assert (R_Q @ R_Q).word == ((Gen.R, 2),)

    def test_format_word(self):
        """Test the word text form."""
        assert format_word(()) == "Id"
        assert format_word(((Gen.R, 1), (Gen.L, 2), (Gen.S, 1))) == "R^1 L^2 S"

    @given(words)
    def test_word_matrix_reproduces_entries(self, word):
        """Test that multiplying out the recorded word gives the same matrix."""
        m = word_to_matrix(word)

        assert word_to_matrix(m.word) == m


class TestTransposes:
    """Test the q-transpose and orthogonal q-transpose laws."""

    @given(words)
    def test_involutions(self, word):
        """Test that both transposes are involutions."""
        m = word_to_matrix(word)

        assert q_transpose(q_transpose(m)) == m
        assert orthogonal_q_transpose(orthogonal_q_transpose(m)) == m

    @given(words, words)
    def test_antihomomorphisms(self, first, second):
        """Test (AB)^T = B^T A^T for both transposes."""
        a, b = word_to_matrix(first), word_to_matrix(second)

        assert q_transpose(a @ b) == q_transpose(b) @ q_transpose(a)
        assert orthogonal_q_transpose(a @ b) == (
            orthogonal_q_transpose(b) @ orthogonal_q_transpose(a)
        )

    @given(words)
    def test_trace_and_determinant(self, word):
        """Test Tr and det of T_q and Tr of O_q."""
        m = word_to_matrix(word)

        assert trace(q_transpose(m)) == trace(m)
        assert det(q_transpose(m)) == det(m)
        assert trace(orthogonal_q_transpose(m)) == trace(m).invert_variable()

    @settings(max_examples=50)
    @given(words)
    def test_images_are_group_elements(self, word):
        """Test membership of both images and the transpose words."""
        m = word_to_matrix(word)

        assert is_group_element(q_transpose(m))
        assert is_group_element(orthogonal_q_transpose(m))
        assert matrix_equiv(q_transpose(m), word_to_matrix(transpose_word(word)))
        assert matrix_equiv(
            orthogonal_q_transpose(m), word_to_matrix(orthogonal_word(word))
        )

    def test_non_member_is_detected(self):
        """Test that a matrix unrelated to its q = 1 word is rejected."""
        m = QMatrix(ONE + Q * Q - Q, ZERO, ZERO, ONE)

        assert not is_group_element(m)


class TestRecognize:
    """Test word recognition from integer matrices."""

    def test_reduced_form_fast_path(self):
        """Test [[11, 4], [8, 3]] -> R^1 L^2 R^1 L^2."""
        word = recognize(((11, 4), (8, 3)))

        assert word == ((Gen.R, 1), (Gen.L, 2), (Gen.R, 1), (Gen.L, 2))

    def test_identity_and_s(self):
        """Test the trivial words."""
        assert recognize(((1, 0), (0, 1))) == ()
        assert recognize(((0, -1), (1, 0))) == ((Gen.S, 1),)

    def test_determinant_must_be_one(self):
        """Test that det = -1 is rejected."""
        with pytest.raises(RecognitionError):
            recognize(((0, 1), (1, 0)))

    @given(words)
    def test_recognized_word_evaluates_back(self, word):
        """Test that the recognized word gives ±M at q = 1."""
        target = word_to_matrix(word).evaluate_at_one()
        found = word_to_matrix(recognize(target)).evaluate_at_one()
        (a, b), (c, d) = target

        assert found in (target, ((-a, -b), (-c, -d)))


class TestTraceTypes:
    """Test canonical traces and the trace-type reduction."""

    def test_identity_has_trace_two(self):
        """Test Tr Id = 1 + q^0."""
        found = reduce_trace_type(QMatrix.identity())

        assert found == TraceType(TraceTypeKind.ONE_PLUS_Q_POW, 0)
        assert canonical_trace(QMatrix.identity()) == LaurentPoly.constant(2)

    def test_r_has_q_integer_trace(self):
        """Test Tr R_q = [2]_q."""
        assert reduce_trace_type(R_Q) == TraceType(TraceTypeKind.Q_INT, 2)

    def test_s_has_zero_trace(self):
        """Test Tr S_q = [0]_q."""
        assert reduce_trace_type(S_Q) == TraceType(TraceTypeKind.Q_INT, 0)

    def test_positive_word_polynomial(self):
        """Test that a positive word type reproduces the trace of M_q."""
        tt = TraceType(TraceTypeKind.POSITIVE_WORD, terms=(1, 1))

        assert trace_type_polynomial(tt) == canonical_trace(m_q((1, 1)))
        assert str(tt) == "M_q(1,1)"

    def test_iteration_cap(self):
        """Test that exceeding the round limit is reported."""
        with pytest.raises(TraceReductionError, match="0 rounds"):
            reduce_trace_type(R_Q, max_rounds=0)

    def test_rounds_are_logged(self):
        """Test one formatted debug line per reduction round."""
        log = Mock(spec=logging.Logger)

        reduce_trace_type(R_Q, log=log)

        log.debug.assert_called_once_with("round 0: r=0 t=-1 s=1 u=1")

    @settings(max_examples=60)
    @given(words)
    def test_reduction_reproduces_canonical_trace(self, word):
        """Test that the reduced type has the canonical trace of the input."""
        m = word_to_matrix(word)
        trace_poly = canonical_trace(m)

        assert trace_type_polynomial(reduce_trace_type(m)) == trace_poly
        assert trace_poly.is_palindromic()
        assert all(c >= 0 for c in trace_poly.coeffs)
