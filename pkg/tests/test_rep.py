import pytest
from hypothesis import given
from hypothesis import strategies as st

from higherar.algebra import endomorphism_presentation, lambda_n, linear_quiver, path_algebra
from higherar.rep import (ExactSeq, RepError, cokernel, decompose, direct_sum, dualize,
                          hom_dim, hom_space, identity_map, image, injective, is_isomorphic,
                          kernel, projective, radical, regular_module,
                          rep_from_json, simple, socle, top, zero_map, zero_rep)


@pytest.fixture(scope="module")
def L2():
    return lambda_n(2)


@pytest.fixture(scope="module")
def A3():
    return path_algebra(linear_quiver(3))


def test_projective_and_injective_dims(L2):
    assert [projective(L2, v).dim for v in (0, 1, 2)] == [2, 2, 1]
    assert [injective(L2, v).dim for v in (0, 1, 2)] == [1, 2, 2]
    assert is_isomorphic(injective(L2, 0), simple(L2, 0))[0]
    assert all(simple(L2, v).dim == 1 for v in (0, 1, 2))


def test_unknown_vertex(L2):
    with pytest.raises(RepError):
        simple(L2, 7)


def test_hom_between_simples(L2):
    for i in (0, 1, 2):
        for j in (0, 1, 2):
            assert hom_dim(simple(L2, i), simple(L2, j)) == (i == j)
    assert hom_dim(projective(L2, 0), simple(L2, 0)) == 1


def test_endomorphism_dimension_matches_presentation(L2):
    M = direct_sum([projective(L2, 0), projective(L2, 1), simple(L2, 0)], L2)[0]
    assert hom_dim(M, M) == endomorphism_presentation(M).algebra.dim


def test_duality(L2):
    op = L2.opposite()
    for v in (0, 1, 2):
        assert dualize(simple(L2, v)).dims == simple(op, v).dims
        assert is_isomorphic(dualize(projective(L2, v)), injective(op, v))[0]
        P = projective(L2, v)
        assert is_isomorphic(dualize(dualize(P)), P)[0]


def test_decompositions(L2, A3):
    P0 = projective(L2, 0)
    twice = direct_sum([P0, P0], L2)[0]
    parts = decompose(twice)
    assert len(parts) == 1 and parts[0][1] == 2 and is_isomorphic(parts[0][0], P0)[0]

    parts = decompose(regular_module(L2))
    assert sorted(X.dims for X, _ in parts) == sorted(projective(L2, v).dims for v in (0, 1, 2))
    assert all(m == 1 for _, m in parts)

    mods = [projective(A3, v) for v in (1, 2, 3)] + [simple(A3, v) for v in (1, 2, 3)]
    parts = decompose(direct_sum(mods, A3)[0])
    assert len(parts) == 5
    assert sum(m for _, m in parts) == 6
    merged = [X for X, m in parts if m == 2]
    assert len(merged) == 1 and is_isomorphic(merged[0], simple(A3, 3))[0]


def test_isomorphism(L2):
    assert is_isomorphic(projective(L2, 2), simple(L2, 2))[0]
    assert not is_isomorphic(simple(L2, 0), simple(L2, 1))[0]
    P1 = projective(L2, 1)
    ok, iso = is_isomorphic(P1, P1)
    assert ok and iso.is_iso()


def test_radical_top_socle(L2):
    for v in (0, 1, 2):
        S = simple(L2, v)
        assert radical(S)[0].is_zero()
        assert socle(S)[0].dims == S.dims
        assert is_isomorphic(top(projective(L2, v))[0], S)[0]
    assert is_isomorphic(socle(projective(L2, 0))[0], simple(L2, 1))[0]


def test_kernel_image_cokernel(L2):
    P0 = projective(L2, 0)
    assert kernel(identity_map(P0))[0].is_zero()
    Z = zero_rep(L2)
    assert cokernel(zero_map(Z, P0))[0].dims == P0.dims
    f = hom_space(P0, simple(L2, 0))[0]
    assert is_isomorphic(image(f)[0], simple(L2, 0))[0]
    assert is_isomorphic(kernel(f)[0], simple(L2, 1))[0]


def test_short_exact_sequence(L2):
    P0, S0 = projective(L2, 0), simple(L2, 0)
    f = hom_space(P0, S0)[0]
    K, inc = kernel(f)
    seq = ExactSeq([inc, f])
    assert seq.is_exact()
    assert [X.dim for X in seq.terms] == [1, 2, 1]


def test_json_round_trip(L2):
    P = projective(L2, 0)
    Q = rep_from_json(L2, P.to_json())
    assert is_isomorphic(P, Q)[0]


def test_relation_violation_rejected(L2):
    # a0 a1 acts nontrivially here
    bad = {"dim_vector": [1, 1, 1], "action": {"a0": [[1]], "a1": [[1]]}}
    with pytest.raises(RepError):
        rep_from_json(L2, bad)


@given(st.lists(st.sampled_from(["P0", "P1", "P2", "S0", "S1", "I1", "I2"]), min_size=1, max_size=4))
def test_decompose_respects_dimension(names):
    L = lambda_n(2)
    build = {"P": projective, "S": simple, "I": injective}
    mods = [build[n[0]](L, int(n[1])) for n in names]
    M = direct_sum(mods, L)[0]
    parts = decompose(M)
    assert sum(X.dim * m for X, m in parts) == M.dim
    assert sum(m for _, m in parts) == len(names)


@given(st.integers(0, 2), st.integers(0, 2))
def test_hom_space_maps_intertwine(i, j):
    L = lambda_n(2)
    H = hom_space(injective(L, i), projective(L, j))
    assert all(f.check() for f in H)
    assert len(H) == hom_dim(injective(L, i), projective(L, j))
