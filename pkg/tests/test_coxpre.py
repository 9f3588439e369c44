import json
from collections import deque

import pytest
from hypothesis import given
from hypothesis import strategies as st

from higherar.algebra import Arrow, Quiver
from higherar.coxpre import (CoxeterError, CoxeterSystem, TruncationError, arrow_multiset,
                             basic_t, compare_expression_quiver, cyclic_quiver, expression_data,
                             ideal_Iw, ideal_relation_report, parse_word, prefix_ideals,
                             quiver_of_expression, truncated_preprojective, underline_quiver,
                             verify_t_cluster_tilting)
from higherar.highergrid import dynkin_quiver
from higherar.rep import is_isomorphic, simple


def cayley_lengths(W, radius):
    """Word length of every element within the ball, by breadth-first search over matrices."""
    key = lambda m: tuple(tuple(r) for r in m)
    start = W.matrix(())
    dist = {key(start): 0}
    queue = deque([((), start)])
    while queue:
        word, m = queue.popleft()
        if len(word) == radius:
            continue
        for g in W.generators:
            nxt = W.matrix(word + (g,))
            if key(nxt) not in dist:
                dist[key(nxt)] = len(word) + 1
                queue.append((word + (g,), nxt))
    return dist, key


@pytest.fixture(scope="module")
def triangle():
    return cyclic_quiver(3)


@pytest.fixture(scope="module")
def expressions(golden):
    return json.loads((golden / "expression_quivers.json").read_text())["expressions"]


@pytest.fixture(scope="module")
def pipelines(triangle, expressions):
    return [expression_data(triangle, tuple(e["word"])) for e in expressions]


def test_parse_word():
    assert parse_word("1 2 1") == (1, 2, 1)
    assert parse_word("1,2,3") == (1, 2, 3)


def test_coxeter_data_of_triangle(triangle):
    W = CoxeterSystem(triangle)
    assert W.rank == 3
    assert all(W.m[i][j] == 3 for i in range(3) for j in range(3) if i != j)
    kron = Quiver([1, 2], [Arrow("a", 1, 2), Arrow("b", 1, 2)])
    assert CoxeterSystem(kron).m[0][1] is None
    with pytest.raises(CoxeterError):
        CoxeterSystem(Quiver([1], [Arrow("x", 1, 1)]))
    with pytest.raises(CoxeterError):
        W.matrix((4,))


def test_printed_expressions(triangle, expressions):
    W = CoxeterSystem(triangle)
    words = [tuple(e["word"]) for e in expressions]
    assert all(W.is_reduced(w) and W.length(w) == 5 for w in words)
    assert all(W.equal(words[0], w) for w in words)
    assert len({W.normal_form(w) for w in words}) == 1


def test_small_cases():
    W = CoxeterSystem(dynkin_quiver("A2"))
    assert W.reduce((1, 1)) == ()
    assert W.all_reduced_expressions(()) == [()]
    assert W.all_reduced_expressions((1, 2, 1)) == [(1, 2, 1), (2, 1, 2)]
    assert not W.is_reduced((1, 2, 1, 2))
    dist, key = cayley_lengths(W, 4)
    assert len(dist) == 6


@given(st.lists(st.sampled_from([1, 2, 3]), max_size=7))
def test_length_agrees_with_cayley_graph(word):
    W = CoxeterSystem(cyclic_quiver(3))
    dist, key = cayley_lengths(W, 7)
    word = tuple(word)
    assert W.length(word) == dist[key(W.matrix(word))]
    assert W.is_reduced(word) == (len(word) == dist[key(W.matrix(word))])


@given(st.lists(st.sampled_from([1, 2, 3]), max_size=8))
def test_reduce_and_normal_form(word):
    W = CoxeterSystem(cyclic_quiver(3))
    r = W.reduce(word)
    assert W.is_reduced(r)
    assert W.matrix(r) == W.matrix(word)
    nf = W.normal_form(word)
    assert len(nf) == len(r) and W.matrix(nf) == W.matrix(word)
    for other in W.all_reduced_expressions(r):
        assert W.normal_form(other) == nf
        assert nf <= other


@given(st.lists(st.sampled_from([1, 2, 3]), max_size=6))
def test_underline_quiver_drops_last_occurrences(word):
    Q = cyclic_quiver(3)
    word = CoxeterSystem(Q).reduce(word)
    q = underline_quiver(Q, word)
    assert q.n_vertices == len(word) - len(set(word))
    full = quiver_of_expression(Q, word)
    assert full.n_vertices == len(word)


def test_truncated_preprojective_of_a2():
    assert truncated_preprojective(dynkin_quiver("A2"), 3).dim == 4
    assert truncated_preprojective(dynkin_quiver("A2"), 4).dim == 4


def test_ideal_relations(triangle):
    for N in (6, 7):
        report = ideal_relation_report(truncated_preprojective(triangle, N))
        assert report["holds"]
        assert set(report["braid"]) == {"1,2", "1,3", "2,3"}


def test_iw_agrees_across_expressions(triangle, expressions):
    for N in (6, 7):
        A = truncated_preprojective(triangle, N)
        ideals = [prefix_ideals(A, tuple(e["word"])).ideals[-1] for e in expressions]
        assert ideals[0] == ideals[1] == ideals[2]
        assert ideal_Iw(A, tuple(expressions[0]["word"])) == ideals[0]
    assert ideals[0].block_codims() == [[1, 2, 2], [1, 3, 2], [0, 1, 1]]


def test_truncation_is_checked(triangle):
    with pytest.raises(TruncationError):
        expression_data(triangle, (1, 2, 1, 3, 2), N=3)


def test_pipeline_matches_golden(pipelines, expressions):
    for data, e in zip(pipelines, expressions):
        assert data.N == 6
        assert data.lambda_w.dim == 13
        assert data.new_dimensions() == e["new_dims"]
        assert [v for _, v in data.new] == e["new_tops"]


def test_expression_quivers_match_golden(triangle, expressions):
    for e in expressions:
        q = quiver_of_expression(triangle, tuple(e["word"]))
        expected = {}
        for s, t in e["arrows"]:
            expected[(s, t)] = expected.get((s, t), 0) + 1
        assert arrow_multiset(q) == expected


def test_endomorphism_quiver_is_expression_quiver_reversed(pipelines):
    for data in pipelines:
        report = compare_expression_quiver(data)
        assert report["equal_opposite"]


def test_t_is_cluster_tilting(pipelines):
    for data in pipelines[:1]:
        cert = verify_t_cluster_tilting(data)
        assert cert.holds and cert.evidence["in_sub"]
        assert cert.evidence["end_gl_dim"] <= 3


def test_a2_longest_element():
    data = expression_data(dynkin_quiver("A2"), (1, 2, 1))
    assert data.lambda_w.dim == 4
    assert data.new_dimensions() == [1, 2, 2]
    assert verify_t_cluster_tilting(data).holds


def test_single_reflection():
    data = expression_data(dynkin_quiver("A2"), (1,))
    assert data.lambda_w.dim == 1
    assert data.lambda_w.n_vertices == 1
    T = basic_t(data)
    assert len(T) == 1 and is_isomorphic(T[0], simple(T[0].algebra, 1))[0]
    assert verify_t_cluster_tilting(data).holds


def test_identity_is_rejected():
    with pytest.raises(CoxeterError):
        expression_data(dynkin_quiver("A2"), ())
