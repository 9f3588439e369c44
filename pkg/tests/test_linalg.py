import sympy
from hypothesis import given
from hypothesis import strategies as st

from higherar.linalg import (Echelon, ExactMatrix, Subspace, kernel_basis, qq, rref, solve,
                             subspace_intersection, subspace_sum)


def mat(rows):
    return ExactMatrix.from_rows(rows)


small_ints = st.integers(min_value=-4, max_value=4)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(small_ints) for _ in range(c)] for _ in range(r)]


def test_rref_small_cases():
    assert rref(mat([[1, 0], [0, 1]])) == (mat([[1, 0], [0, 1]]), 2)
    assert rref(mat([[1, 2], [2, 4]])) == (mat([[1, 2], [0, 0]]), 1)
    assert rref(mat([[0, 1], [1, 0]])) == (mat([[1, 0], [0, 1]]), 2)


def test_kernel_small_cases():
    assert kernel_basis(ExactMatrix.zeros(3, 3)).dim == 3
    assert kernel_basis(ExactMatrix.identity(3)).dim == 0
    k = kernel_basis(mat([[1, 1]]))
    assert k == Subspace(2, [[1, -1]])


def test_solve_small_cases():
    assert solve(ExactMatrix.identity(2), [3, 5]) == [3, 5]
    x = solve(mat([[1, 1]]), [2])
    assert x[0] + x[1] == 2
    assert solve(mat([[0]]), [1]) is None


def test_subspace_operations():
    a = Subspace(3, [[1, 2, 0]])
    zero = Subspace(3)
    full = Subspace(3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert subspace_sum(a, zero) == a
    assert subspace_intersection(a, full) == a
    e1, e2 = Subspace(2, [[1, 0]]), Subspace(2, [[0, 1]])
    assert subspace_intersection(e1, e2).dim == 0


def test_exact_arithmetic():
    m = mat([[1, 3], [2, 7]])
    assert all(type(x) is type(qq(1)) for row in m.rows for x in row)
    assert m.rank() == 2


def test_echelon_coordinates():
    e = Echelon(3, track=True)
    assert e.add({0: qq(1), 1: qq(1)})
    assert e.add({1: qq(1)})
    assert not e.add({0: qq(2), 1: qq(3)})
    assert e.coordinates({0: qq(2), 1: qq(3)}) == {0: 2, 1: 1}


@given(matrices())
def test_rank_matches_sympy(rows):
    assert mat(rows).rank() == sympy.Matrix(rows).rank()


@given(matrices())
def test_rank_nullity(rows):
    m = mat(rows)
    assert m.rank() + kernel_basis(m).dim == m.ncols


@given(matrices())
def test_rref_is_idempotent(rows):
    once, r = rref(mat(rows))
    twice, r2 = rref(once)
    assert once == twice and r == r2


@given(matrices())
def test_kernel_vectors_are_annihilated(rows):
    m = mat(rows)
    for v in kernel_basis(m).basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m.rows)


@given(matrices(4, 4), st.lists(small_ints, min_size=4, max_size=4))
def test_solve_consistent_systems(rows, x):
    m = mat(rows)
    x = x[:m.ncols] + [0] * (m.ncols - len(x))
    b = [sum(qq(a) * qq(c) for a, c in zip(row, x)) for row in rows]
    y = solve(m, b)
    assert y is not None
    assert [sum(a * c for a, c in zip(row, y)) for row in m.rows] == b


@given(matrices(3, 4), matrices(3, 4))
def test_subspace_dimension_formula(r1, r2):
    n = min(len(r1[0]), len(r2[0]))
    a = Subspace(n, [r[:n] for r in r1])
    b = Subspace(n, [r[:n] for r in r2])
    assert subspace_sum(a, b).dim + subspace_intersection(a, b).dim == a.dim + b.dim
