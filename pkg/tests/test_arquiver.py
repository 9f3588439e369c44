import pytest
from hypothesis import given
from hypothesis import strategies as st

from higherar.algebra import Arrow, Quiver, build_algebra, lambda_n, linear_quiver, path_algebra
from higherar.arquiver import (KnitError, additive_generator, almost_split_ending_at,
                               almost_split_starting_at, certify_quiver, knit, verify_almost_split)
from higherar.highergrid import dynkin_quiver
from higherar.homology import tau
from higherar.rep import RepError, decompose, injective, is_isomorphic, projective, simple


def positive_roots(Q):
    """Positive roots of the underlying graph, closed under simple reflections."""
    n = Q.n_vertices
    adj = [[0] * n for _ in range(n)]
    for k in range(Q.n_arrows):
        s, t = Q.src[k], Q.tgt[k]
        adj[s][t] += 1
        adj[t][s] += 1
    simple_roots = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots, frontier = set(simple_roots), list(simple_roots)
    while frontier:
        r = frontier.pop()
        for i in range(n):
            pairing = 2 * r[i] - sum(adj[i][j] * r[j] for j in range(n))
            s = tuple(r[j] - (pairing if j == i else 0) for j in range(n))
            if all(x >= 0 for x in s) and any(s) and s not in roots:
                roots.add(s)
                frontier.append(s)
    return roots


@pytest.mark.parametrize("kind", ["A1", "A2", "A3", "A4", "D4", "D5"])
def test_node_count_matches_positive_roots(kind):
    Q = dynkin_quiver(kind)
    ar = knit(path_algebra(Q))
    roots = positive_roots(Q)
    assert len(ar) == len(roots)
    assert {tuple(N.dims) for N in ar.nodes} == roots


def test_root_oracle_counts():
    assert len(positive_roots(dynkin_quiver("A4"))) == 10
    assert len(positive_roots(dynkin_quiver("D4"))) == 12


def test_a2_quiver():
    A = path_algebra(linear_quiver(2))
    ar = knit(A)
    assert len(ar) == 3
    assert len(ar.arrows) == 2
    assert len(ar.tau) == 1
    assert certify_quiver(ar)["closed"]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_lambda_n_zigzag(n):
    ar = knit(lambda_n(n))
    assert len(ar) == 2 * n + 1
    assert len(ar.tau) == n
    assert sum(ar.arrows.values()) == 2 * n


def test_sequences_over_a2():
    A = path_algebra(linear_quiver(2))
    ass = almost_split_ending_at(simple(A, 1))
    assert is_isomorphic(ass.start, simple(A, 2))[0]
    assert is_isomorphic(ass.middle, projective(A, 1))[0]
    assert ass.seq.is_exact()


def test_sequences_over_lambda_two():
    L = lambda_n(2)
    ass = almost_split_ending_at(simple(L, 1))
    assert is_isomorphic(ass.start, simple(L, 2))[0]
    assert is_isomorphic(ass.middle, projective(L, 1))[0]
    ass = almost_split_ending_at(simple(L, 0))
    assert is_isomorphic(ass.start, simple(L, 1))[0]
    assert is_isomorphic(ass.middle, projective(L, 0))[0]
    ar = knit(L)
    for x, z in ar.tau.items():
        assert is_isomorphic(ar.nodes[z], tau(ar.nodes[x]))[0]
        assert verify_almost_split(ar.meshes[x], ar.nodes)


def test_sequence_errors():
    L = lambda_n(2)
    with pytest.raises(RepError):
        almost_split_ending_at(projective(L, 0))
    with pytest.raises(RepError):
        almost_split_starting_at(injective(L, 2))


def test_representation_infinite_is_reported():
    kronecker = Quiver([1, 2], [Arrow("a", 1, 2), Arrow("b", 1, 2)])
    with pytest.raises(KnitError) as info:
        knit(path_algebra(kronecker), dim_cap=8)
    assert info.value.partial is not None


def test_additive_generator():
    A = path_algebra(linear_quiver(3))
    M = additive_generator(A)
    assert len(decompose(M)) == 6
    k = path_algebra(Quiver([0], []))
    assert tuple(additive_generator(k).dims) == (1,)


def test_source_sink_a3_has_six_nodes():
    q = Quiver([1, 2, 3], [Arrow("a", 1, 2), Arrow("b", 3, 2)])
    assert len(knit(path_algebra(q))) == 6


@given(st.integers(1, 5))
def test_linear_count(n):
    assert len(knit(path_algebra(linear_quiver(n)))) == n * (n + 1) // 2


@given(st.integers(2, 5), st.integers(2, 4))
def test_truncated_linear_meshes(n, N):
    # all paths of length N vanish
    rels = [[(1, [f"a{i + k}" for k in range(N)])] for i in range(1, n - N + 1)]
    A = build_algebra(linear_quiver(n), rels, N) if N < n else path_algebra(linear_quiver(n))
    ar = knit(A)
    cert = certify_quiver(ar)
    assert cert["closed"] and cert["radical_generated"]
    assert sorted(ar.tau) == [i for i in range(len(ar)) if not ar.projective[i]]
