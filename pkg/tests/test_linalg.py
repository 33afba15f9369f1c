from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

try:
    import sympy
except ImportError:  # optional oracle
    sympy = None

from leibder.linalg import (
    RatMatrix,
    ShapeError,
    format_rational,
    in_span,
    matvec,
    nullity,
    nullspace,
    parse_rational,
    rank,
    rref,
    span_basis,
)


@st.composite
def matrices(draw, max_dim=4):
    rows = draw(st.integers(min_value=1, max_value=max_dim))
    cols = draw(st.integers(min_value=1, max_value=max_dim))
    entries = draw(
        st.lists(
            st.fractions(min_value=-5, max_value=5, max_denominator=4),
            min_size=rows * cols,
            max_size=rows * cols,
        )
    )
    return RatMatrix(rows, cols, tuple(entries))


def test_parse_and_format_rationals():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational(" -4 ") == Fraction(-4)
    assert parse_rational("-2 / 8") == Fraction(-1, 4)
    assert format_rational(Fraction(2)) == "2/1"
    assert format_rational(Fraction(-1, 2)) == "-1/2"

    for bad in ("1/0", "abc", "1.5", ""):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_matrix_shape_errors():
    with pytest.raises(ShapeError):
        RatMatrix(2, 2, (1, 2, 3))
    with pytest.raises(ShapeError):
        RatMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(ShapeError):
        RatMatrix.identity(2) @ RatMatrix.zeros(3, 1)
    with pytest.raises(ShapeError):
        matvec(RatMatrix.identity(2), (Fraction(1),))


def test_matrix_arithmetic():
    a = RatMatrix.from_rows([[1, 2], [3, 4]])
    b = RatMatrix.from_rows([[0, 1], [1, 0]])
    assert (a @ b).to_rows() == [[2, 1], [4, 3]]
    assert (a - a).is_zero()
    assert (a + b).at(0, 1) == 3
    assert (-a).at(1, 1) == -4
    assert a.transpose().row(0) == (1, 3)
    assert a.column(1) == (2, 4)
    assert RatMatrix.from_columns([[1, 3], [2, 4]]) == a
    assert a @ RatMatrix.identity(2) == a


def test_rref_rank_and_pivots():
    result = rref(RatMatrix.from_rows([[1, 2], [2, 4]]))
    assert result.rank == 1
    assert result.pivot_cols == (0,)
    assert result.rref.entries == (1, 2, 0, 0)

    assert rank(RatMatrix.identity(3)) == 3
    assert nullity(RatMatrix.zeros(2, 3)) == 3


def test_nullspace_canonical_basis():
    basis = nullspace(RatMatrix.from_rows([[1, 2, 3]]))
    assert basis == [
        (Fraction(-2), Fraction(1), Fraction(0)),
        (Fraction(-3), Fraction(0), Fraction(1)),
    ]


def test_span_helpers():
    e1 = (Fraction(1), Fraction(0), Fraction(0))
    assert in_span([e1], (Fraction(2), Fraction(0), Fraction(0)))
    assert not in_span([e1], (Fraction(0), Fraction(1), Fraction(0)))
    assert in_span([], (Fraction(0),) * 3)
    assert len(span_basis([e1, e1, (Fraction(3), Fraction(0), Fraction(0))], 3)) == 1


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_is_idempotent(m):
    once = rref(m).rref
    assert rref(once).rref == once


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity_and_kernel(m):
    basis = nullspace(m)
    assert rank(m) + len(basis) == m.cols
    for v in basis:
        assert all(x == 0 for x in matvec(m, v))
        assert all(isinstance(x, Fraction) for x in v)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_reversed_elimination_agrees(m):
    assert rank(m) == rank(m, reversed_columns=True)


@pytest.mark.skipif(sympy is None, reason="sympy not installed")
@settings(max_examples=40, deadline=None)
@given(matrices())
def test_rank_agrees_with_sympy(m):
    other = sympy.Matrix(
        m.rows, m.cols, [sympy.Rational(x.numerator, x.denominator) for x in m.entries]
    )
    assert rank(m) == other.rank()


def test_small_worked_examples():
    assert rref(RatMatrix.identity(2)).pivot_cols == (0, 1)
    zero = rref(RatMatrix.zeros(3, 3))
    assert zero.rank == 0 and zero.rref.is_zero()
    assert nullspace(RatMatrix.from_rows([[1, 2], [2, 4]])) == [(Fraction(-2), Fraction(1))]
    assert nullspace(RatMatrix.identity(3)) == []
    assert len(nullspace(RatMatrix.zeros(1, 3))) == 3

    nil = RatMatrix.from_rows([[0, 1], [0, 0]])
    assert (nil @ nil).is_zero()
    product = RatMatrix.from_rows([[1, 1], [0, 1]]) @ RatMatrix.from_rows([[1, 0], [1, 1]])
    assert product.to_rows() == [[2, 1], [1, 1]]


@settings(max_examples=60, deadline=None)
@given(
    st.fractions(max_denominator=50),
    st.fractions(max_denominator=50).filter(lambda b: b != 0),
)
def test_arithmetic_is_exact(a, b):
    assert (a + b) - b == a
    assert (a * b) / b == a
