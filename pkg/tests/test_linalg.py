from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from thetasp.linalg import RationalMatrix, Span, bracket, nullspace, rank, rref, solve

fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def square(draw, max_size=4):
    n = draw(st.integers(1, max_size))
    return [[draw(fracs) for _ in range(n)] for _ in range(n)]


def test_no_floats():
    with pytest.raises(TypeError):
        RationalMatrix([[0.5]])


def test_from_entries_is_one_based():
    m = RationalMatrix.from_entries(2, {(1, 2): "1/2"})
    assert m[0, 1] == Fraction(1, 2)
    with pytest.raises(IndexError):
        RationalMatrix.from_entries(2, {(3, 1): 1})


def test_block_diag_and_json():
    m = RationalMatrix.block_diag(RationalMatrix([[2]]), RationalMatrix([[0, Fraction(1, 3)], [1, 0]]))
    assert m.to_json() == [["2", "0", "0"], ["0", "0", "1/3"], ["0", "1", "0"]]


def test_singular_inverse():
    with pytest.raises(ZeroDivisionError):
        RationalMatrix([[1, 2], [2, 4]]).inverse()


def test_solve_inconsistent():
    assert solve([[1, 1], [2, 2]], [1, 3]) is None
    assert solve([[1, 1], [2, 2]], [1, 2]) == [1, 0]


@settings(max_examples=60, deadline=None)
@given(square())
def test_det_and_rank_match_sympy(rows):
    m = RationalMatrix(rows)
    sm = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])
    assert m.det() == Fraction(str(sm.det()))
    assert rank(rows) == sm.rank()


@settings(max_examples=60, deadline=None)
@given(square())
def test_inverse_roundtrip(rows):
    m = RationalMatrix(rows)
    if m.det() == 0:
        return
    assert m @ m.inverse() == RationalMatrix.identity(m.size)
    assert m ** -1 == m.inverse()


@settings(max_examples=60, deadline=None)
@given(square())
def test_nullspace_is_kernel(rows):
    n = len(rows)
    ker = nullspace(rows, n)
    assert len(ker) + rank(rows) == n
    for v in ker:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


@given(square(3), square(3))
def test_bracket_antisymmetric(a, b):
    if len(a) != len(b):
        return
    x, y = RationalMatrix(a), RationalMatrix(b)
    assert bracket(x, y) == -bracket(y, x)


def test_span_equality_ignores_generators():
    a = Span([[1, 0, 1], [0, 1, 1]], 3)
    b = Span([[1, 1, 2], [1, -1, 0]], 3)
    assert a == b and a.dim == 2
    assert a.contains([2, 3, 5]) and not a.contains([0, 0, 1])
    assert a.coordinates([2, 3, 5]) == [2, 3]
    assert (a + Span([[0, 0, 1]], 3)).dim == 3


def test_rref_pivots():
    red, piv = rref([[0, 2, 4], [1, 1, 1]])
    assert piv == [0, 1]
    assert red == [[1, 0, -1], [0, 1, 2]]
