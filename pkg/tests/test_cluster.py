import pytest
from hypothesis import given
from hypothesis import strategies as st

from higherar.algebra import lambda_n, linear_quiver, path_algebra, same_shape
from higherar.arquiver import additive_generator, knit
from higherar.cli import named_algebra
from higherar.cluster import (Ambient, ClusterError, approximation_resolution, basic_summands,
                              cluster_tilting_subsets, cone, exchange_summand, ext_table,
                              hom_sequence_exact, is_n_cluster_tilting, is_n_complete, is_n_rigid,
                              is_tilting, left_approximation, m_n_subcategory, n_almost_split,
                              n_ar_duality, orbit_profile, proj_inj_bijection,
                              right_approximation, sub_membership, tilting_between_ct)
from higherar.coxpre import basic_t, cyclic_quiver, expression_data
from higherar.highergrid import dynkin_quiver
from higherar.homology import ext_dim, injective_coresolution, injective_envelope
from higherar.rep import (RepError, direct_sum, identity_map, injective, is_isomorphic, projective,
                          regular_module, simple)


def lambda_plus_top(n):
    L = lambda_n(n)
    return L, direct_sum([regular_module(L), simple(L, 0)], L)[0]


def test_every_module_is_one_rigid():
    L = lambda_n(3)
    assert is_n_rigid(simple(L, 1), 1)
    assert not is_n_rigid(direct_sum([simple(L, 0), simple(L, 1)], L)[0], 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_lambda_n_cluster_tilting(n):
    L, M = lambda_plus_top(n)
    assert is_n_rigid(M, n)
    cert = is_n_cluster_tilting(M, n, criterion="definition")
    assert cert.holds and cert.evidence["nodes"] == 2 * n + 1
    assert cert.replay()


@pytest.mark.parametrize("n", [2, 3])
def test_all_three_criteria_agree(n):
    _, M = lambda_plus_top(n)
    verdicts = {c: is_n_cluster_tilting(M, n, criterion=c).holds
                for c in ("definition", "one_sided", "lemma")}
    assert set(verdicts.values()) == {True}


def test_refutation_names_a_node():
    L = lambda_n(2)
    cert = is_n_cluster_tilting(regular_module(L), 2, criterion="definition")
    assert not cert.holds and "node" in cert.refutation


def test_uniqueness_by_subset_search():
    ar = knit(lambda_n(2))
    found = cluster_tilting_subsets(ar.nodes, 2)
    assert len(found) == 1
    assert len(found[0]) == 4


def test_additive_generator_is_one_cluster_tilting():
    for A in (path_algebra(linear_quiver(3)), lambda_n(2)):
        assert is_n_cluster_tilting(additive_generator(A), 1).holds


def test_right_approximation_of_top_simple():
    L = lambda_n(2)
    f = right_approximation(simple(L, 0), regular_module(L))
    assert is_isomorphic(f.source, projective(L, 0))[0]
    assert f.is_surjective()
    X = projective(L, 1)
    g = right_approximation(X, regular_module(L))
    assert g.is_iso()
    h = left_approximation(injective(L, 1), regular_module(L))
    assert h.is_injective()


def test_approximation_resolutions():
    L, M = lambda_plus_top(2)
    cert = is_n_cluster_tilting(M, 2, criterion="definition")
    res = approximation_resolution(simple(L, 1), M, 2, cert)
    assert res.hom_exact
    assert len(res.right) == 2 and len(res.left) == 2
    inside = approximation_resolution(projective(L, 0), M, 2, cert)
    assert len(inside.right) == 1 and inside.right.maps[0].is_iso()
    with pytest.raises(ClusterError):
        approximation_resolution(simple(L, 1), M, 2, None)


def test_left_approximation_of_injective_starts_its_coresolution():
    A = named_algebra("aus:A2")
    X = simple(A, A.quiver.vertices[0])
    env = injective_envelope(X)
    g = left_approximation(X, regular_module(A).algebra and direct_sum(
        [injective(A, v) for v in A.quiver.vertices], A)[0])
    assert is_isomorphic(g.target, env.module)[0]
    assert injective_coresolution(X).terms[0].dims == env.module.dims


@pytest.mark.parametrize("n", [2, 3])
def test_n_almost_split_sequences(n):
    L, M = lambda_plus_top(n)
    s = n_almost_split(simple(L, 0), M, n)
    assert s.hom_exact and s.start_is_tau_n
    assert len(s.seq) == n + 1
    assert is_isomorphic(s.start, simple(L, n))[0]
    with pytest.raises(RepError):
        n_almost_split(projective(L, 0), M, n)


def test_orbits_over_auslander_algebras():
    A = named_algebra("aus:A3")
    M, Mp = m_n_subcategory(A, 2)
    assert orbit_profile(M) == [6, 3, 1]
    assert len(M) == len(Mp) == 10
    mods = [e.module for e in M]
    total = direct_sum(mods, A)[0]
    assert is_n_cluster_tilting(total, 2, criterion="lemma").holds
    assert is_n_cluster_tilting(total, 2, criterion="definition").holds
    A3ss = named_algebra("aus:A3ss")
    assert orbit_profile(m_n_subcategory(A3ss, 2)[0]) == [6, 3]


def test_proj_inj_bijection():
    L = lambda_n(2)
    assert proj_inj_bijection(L, 2) == {0: (1, 2), 1: (0, 0), 2: (0, 1)}


def test_complete_and_cone():
    A2 = path_algebra(linear_quiver(2))
    rep = is_n_complete(A2, 1)
    assert rep["complete"] and rep["a"] and rep["b"] and rep["c"] and rep["d"]
    C = cone(A2, 1)
    assert C.dim == lambda_n(2).dim
    assert same_shape(C, lambda_n(2)) is not None


def test_tilting_checks():
    L = lambda_n(2)
    assert is_tilting(regular_module(L))
    assert not is_tilting(simple(L, 0))
    A = path_algebra(linear_quiver(3))
    apr = direct_sum([projective(A, 2), projective(A, 3), injective(A, 3)], A)[0]
    assert is_tilting(apr)


def test_n_ar_duality_over_lambda_two():
    _, M = lambda_plus_top(2)
    nodes = basic_summands(M)
    for (a, b), triple in n_ar_duality(nodes, 2).items():
        assert len(set(triple)) == 1


def test_hom_exactness_of_identity():
    L = lambda_n(2)
    P = projective(L, 0)
    assert hom_sequence_exact(P, [identity_map(P)], True)


def test_sub_membership_and_exchange():
    data = expression_data(dynkin_quiver("A2"), (1, 2, 1))
    T = basic_t(data)
    B = T[0].algebra
    assert all(sub_membership(X) for X in T)
    X = next(X for X in T if X.dims == (1, 0))
    ex = exchange_summand(T, X, two_cy=True)
    assert ex.new.dims == (0, 1)
    assert ex.right_seq.is_exact() and ex.left_seq.is_exact()
    assert is_n_cluster_tilting(ex.module, 2, Ambient("sub"), "lemma").holds
    report = tilting_between_ct(direct_sum(T, B)[0], ex.module)
    assert report["holds"]
    with pytest.raises(ClusterError):
        exchange_summand(T, X)


def test_exchange_refuses_projective_injectives():
    T = basic_t(expression_data(cyclic_quiver(3), (1, 2, 3, 1, 2)))
    refused = 0
    for X in T:
        try:
            exchange_summand(T, X, two_cy=True)
        except ClusterError:
            refused += 1
    assert refused == 3


BATTERY = ["A2", "A3", "A3ss", "lambda2", "lambda3", "aus:A2", "aus:A3", "aus:A3ss"]


@given(st.sampled_from(BATTERY), st.sampled_from([1, 2]))
def test_orbit_categories_are_two_rigid(name, side):
    A = named_algebra(name)
    M, Mp = m_n_subcategory(A, 2)
    mods = [e.module for e in (M if side == 1 else Mp)]
    table = ext_table(mods, 2)
    assert all(x == 0 for row in table[1] for x in row)


@given(st.integers(1, 4))
def test_ext_table_shape(n):
    ar = knit(lambda_n(n))
    t = ext_table(ar.nodes, 3)
    assert set(t) == {1, 2}
    assert all(len(row) == len(ar) for row in t[1])
    assert t[1][0][0] == ext_dim(ar.nodes[0], ar.nodes[0], 1)
