from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from abelred import linalg as la
from abelred.errors import DependentInput, DimensionError, NoSolution

small = st.integers(min_value=-4, max_value=4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def square(max_n=5):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))


def test_q_rejects_floats():
    with pytest.raises(TypeError):
        la.Q(0.5)
    assert la.Q("3/4") == Fraction(3, 4)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_sympy(m):
    assert la.rank(m) == sympy.Matrix(m).rank()


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_matches_sympy(m):
    red, pivots = la.rref(m)
    ref, ref_piv = sympy.Matrix(m).rref()
    assert list(pivots) == list(ref_piv)
    for i, row in enumerate(red):
        assert [sympy.Rational(x.numerator, x.denominator) for x in row] == list(ref.row(i))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_kernel_is_exact_and_complete(m):
    ker = la.kernel_basis(m)
    ncols = len(m[0])
    assert len(ker) == ncols - la.rank(m)
    for v in ker:
        assert la.is_zero(la.mat_vec(la.as_matrix(m), v))
    if ker:
        assert la.rank(ker) == len(ker)


@settings(max_examples=150, deadline=None)
@given(matrices(), st.data())
def test_solve_consistent_system(m, data):
    x0 = data.draw(st.lists(small, min_size=len(m[0]), max_size=len(m[0])))
    b = la.mat_vec(la.as_matrix(m), la.vec(x0))
    x = la.solve(m, b)
    assert la.mat_vec(la.as_matrix(m), x) == b


def test_solve_inconsistent():
    with pytest.raises(NoSolution):
        la.solve([[1, 1], [2, 2]], [1, 3])


def test_solve_sets_free_variables_to_zero():
    assert la.solve([[1, 1]], [5]) == (5, 0)


@settings(max_examples=100, deadline=None)
@given(square())
def test_det_matches_sympy(m):
    assert la.det(m) == sympy.Matrix(m).det()


@settings(max_examples=100, deadline=None)
@given(square())
def test_inverse(m):
    if la.det(m) == 0:
        with pytest.raises(NoSolution):
            la.inverse(m)
    else:
        assert la.mat_mul(la.inverse(m), m) == la.identity(len(m))


def test_kernel_of_empty_matrix_needs_width():
    with pytest.raises(DimensionError):
        la.kernel_basis([])
    assert la.kernel_basis([], ncols=2) == [la.unit(2, 0), la.unit(2, 1)]


def test_extend_to_basis_greedy_lowest_index():
    assert la.extend_to_basis([(1, 1, 0)], 3) == [la.unit(3, 0), la.unit(3, 2)]
    assert la.extend_to_basis([], 2) == [la.unit(2, 0), la.unit(2, 1)]


def test_extend_to_basis_errors():
    with pytest.raises(DependentInput):
        la.extend_to_basis([(1, 0), (2, 0)], 2)
    with pytest.raises(DimensionError):
        la.extend_to_basis([(1, 0, 0)], 2)


@settings(max_examples=100, deadline=None)
@given(matrices(4, 5))
def test_extend_to_basis_completes(m):
    n = len(m[0])
    red, _ = la.rref(m)
    added = la.extend_to_basis(red, n)
    assert la.rank(list(red) + added) == n
    assert len(red) + len(added) == n
