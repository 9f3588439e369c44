import pytest
from hypothesis import given
from hypothesis import strategies as st

from higherar.algebra import (AlgebraError, Arrow, FinDimAlgebra, Quiver, algebra_from_json,
                              build_algebra, cartan_matrix, endomorphism_presentation, lambda_n,
                              linear_quiver, path_algebra, same_shape, truncated_polynomial,
                              verify_presentation)
from higherar.arquiver import additive_generator
from higherar.rep import direct_sum, regular_module, simple


def test_lambda_two_basis():
    A = lambda_n(2)
    assert A.dim == 5
    assert sorted(A.quiver.path_ids(p) for p in A.basis) == [[], [], [], ["a0"], ["a1"]]


def test_single_vertex_and_linear_a3():
    assert path_algebra(Quiver([0], [])).dim == 1
    assert path_algebra(linear_quiver(3), N=3).dim == 6


def test_quiver_validation():
    with pytest.raises(Exception):
        Quiver([1, 2], [Arrow("a", 1, 3)])
    with pytest.raises(Exception):
        Quiver([1, 1], [])
    with pytest.raises(AlgebraError):
        build_algebra(linear_quiver(3), [[(1, ["a1"]), (1, ["a2"])]], 3)


def test_nilpotency_probe():
    with pytest.raises(AlgebraError, match="nilpotency"):
        build_algebra(linear_quiver(4), [], 2)


def test_idempotents_and_associativity():
    A = lambda_n(3)
    one = {i: 1 for i in A.idempotents}
    for i in range(A.dim):
        assert A.mul(one, {i: 1}) == {i: 1} == A.mul({i: 1}, one)
    A.check_associative()


def test_relations_vanish():
    A = lambda_n(3)
    for rel in A.relations:
        assert A.combination_element(rel) == {}


def test_truncated_polynomial_and_opposite():
    B = truncated_polynomial(2)
    assert B.dim == 2 and same_shape(B, B) is not None
    A = path_algebra(linear_quiver(3))
    op = A.opposite()
    assert [(op.quiver.vertices[op.quiver.src[k]], op.quiver.vertices[op.quiver.tgt[k]])
            for k in range(op.quiver.n_arrows)] == [(2, 1), (3, 2)]
    L = lambda_n(2)
    assert L.opposite().opposite().structurally_equal(L)


def test_json_round_trip():
    A = lambda_n(3)
    B = algebra_from_json(A.to_json())
    assert B.dim == A.dim and cartan_matrix(B) == cartan_matrix(A)


def test_end_of_additive_generator_of_a2_is_lambda_two():
    A = path_algebra(linear_quiver(2))
    pres = endomorphism_presentation(additive_generator(A))
    assert same_shape(pres.algebra, lambda_n(2)) is not None
    assert verify_presentation(pres)


def test_end_of_regular_module():
    A = lambda_n(2)
    pres = endomorphism_presentation(regular_module(A))
    assert pres.algebra.dim == A.dim
    assert same_shape(pres.algebra, A) is not None


@pytest.mark.parametrize("n", [1, 2, 3])
def test_end_of_lambda_plus_simple(n):
    A = lambda_n(n)
    M = direct_sum([regular_module(A), simple(A, 0)], A)[0]
    pres = endomorphism_presentation(M)
    assert same_shape(pres.algebra, lambda_n(n + 1)) is not None


@given(st.integers(1, 6))
def test_linear_path_algebra_dimension(m):
    assert path_algebra(linear_quiver(m)).dim == m * (m + 1) // 2


@given(st.integers(1, 6))
def test_lambda_dimension_and_probe(n):
    A = lambda_n(n)
    assert A.dim == 2 * n + 1
    assert FinDimAlgebra(A.quiver, A.relations, 4).dim == A.dim
