import itertools
import random
from math import factorial

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from oracles import arrow_counts, character_oracle

from higherar.cli import random_factorization
from higherar.mfhyper import (HypersurfaceData, MatFac, MFError, MPoly, classify_cluster_tilting,
                              ideal_is_maximal_pair, knorrer, knorrer_lift, loop_pattern,
                              mckay_quiver, one_by_one, parity_rule, partial_product,
                              simple_singularity_has_ct, stable_end_quiver,
                              two_almost_split_complex, verify_mf)


def test_character_oracle_by_hand():
    assert character_oracle((1, 1, 1), 3) == {("0", "1"): 3, ("1", "2"): 3, ("2", "0"): 3}
    assert character_oracle((1, 1, 1, 1), 2) == {("0", "1"): 4, ("1", "0"): 4}


@pytest.mark.parametrize("weights,order", [((1, 1, 1), 3), ((1, 1, 1, 1), 2), ((1, 2), 5),
                                           ((1, 1, 2), 4), ((2, 3), 6)])
def test_mckay_matches_characters(weights, order):
    q = mckay_quiver(weights, order)
    assert q.n_vertices == order
    assert arrow_counts(q) == character_oracle(weights, order)


def test_mckay_errors():
    with pytest.raises(MFError):
        mckay_quiver((1, 1), 3, d=3)
    with pytest.raises(MFError):
        mckay_quiver((1,), 0)


def test_mpoly_basics():
    f = MPoly.parse("x^2 - y^3")
    x, y = MPoly.var("x", ("x", "y")), MPoly.var("y", ("x", "y"))
    assert f == x ** 2 - y ** 3
    assert f.degree() == 3 and f.order() == 2
    assert list((x + y).linear_part()) == [1, 1]
    assert (x - y).divides(x ** 2 - y ** 2)
    assert not (x - y).divides(x ** 2 + y ** 2)
    assert sympy.expand(f.to_sympy() - sympy.sympify("x**2 - y**3")) == 0
    assert hash(x + y) == hash(y + x)


def test_verify_rejects_bad_input():
    x = MPoly.var("x", ("x",))
    assert verify_mf(one_by_one(x ** 2, x, x))
    assert not verify_mf(one_by_one(x ** 3, x, x))
    with pytest.raises(MFError):
        verify_mf(MatFac(x, [[x]], [[x, x], [x, x]]))


def test_knorrer_once_and_twice():
    x, y = MPoly.var("x", ("x", "y")), MPoly.var("y", ("x", "y"))
    mf = one_by_one(x ** 2 - y ** 2, x - y, x + y)
    once = knorrer(mf)
    assert once.size == 2 and verify_mf(once)
    assert once.f == MPoly.parse("x^2 - y^2 + u*v", ("x", "y", "u", "v"))
    twice = knorrer(once, "u1", "v1")
    assert twice.size == 4 and verify_mf(twice)


def test_random_battery():
    rng = random.Random(20261016)
    for k in range(100):
        mf = random_factorization(rng, 1 + k % 2)
        assert verify_mf(mf)
        assert verify_mf(knorrer(mf))


@pytest.mark.parametrize("factors,n", [("x-y,x+y", 2), ("x-y^2,x+y^2,y", 3),
                                    ("x-y^2,x+y^2,x^2-y,x^2+y", 4)])
def test_classification_counts(factors, n):
    data = HypersurfaceData.parse(factors)
    report = classify_cluster_tilting(data)
    assert report["counts"] == {"ct": factorial(n), "rigid": 2 ** n - 1}
    assert report["has_cluster_tilting"]


def test_classification_without_smooth_factors():
    data = HypersurfaceData.parse("x^2-y^3")
    report = classify_cluster_tilting(data)
    assert not report["has_cluster_tilting"]


def test_hypersurface_validation():
    with pytest.raises(MFError):
        HypersurfaceData.parse("1,x")
    with pytest.raises(MFError):
        HypersurfaceData.parse("x-y,2*x-2*y")


@pytest.mark.parametrize("factors", ["x-y,x+y", "x-y^2,x+y^2,y", "x,y,x+y"])
def test_complexes(factors):
    data = HypersurfaceData.parse(factors)
    for i in range(1, data.n + 1):
        report = two_almost_split_complex(data, i)
        assert report["holds"]
        assert all(report["well_defined"]) and all(report["compositions_vanish"])


def test_loop_patterns():
    shapes = {"x-y^3,x+y^3": [True],
              "x-y^2,x+y^2,y": [True, False],
              "x-y^2,x+y^2,x^2-y,x^2+y": [True, False, True]}
    for factors, pattern in shapes.items():
        assert loop_pattern(stable_end_quiver(HypersurfaceData.parse(factors))) == pattern


def test_maximal_pair():
    x, y = MPoly.var("x", ("x", "y")), MPoly.var("y", ("x", "y"))
    assert ideal_is_maximal_pair(x + y ** 2, y)
    assert not ideal_is_maximal_pair(x - y ** 2, x + y ** 2)
    with pytest.raises(MFError):
        ideal_is_maximal_pair(x ** 2, y)


@pytest.mark.parametrize("kind,m", [("A", k) for k in range(1, 7)] + [("D", k) for k in range(4, 8)]
                         + [("E", 6), ("E", 7), ("E", 8)])
def test_simple_singularities_follow_parity(kind, m):
    report = simple_singularity_has_ct(kind, m)
    assert report["verdict"] == parity_rule(kind, m)


def test_knorrer_lift_products():
    data = HypersurfaceData.parse("x-y,x+y,y")
    for w in itertools.permutations((1, 2, 3)):
        lifts = knorrer_lift(data, w)
        assert len(lifts) == 3
        assert lifts[-1][1] == data.f.extend(lifts[-1][1].vars)
        assert lifts[0][1] == data.factor(w[0]).extend(lifts[0][1].vars)


@given(st.integers(1, 4), st.integers(0, 2 ** 32))
def test_partial_products_divide_f(n, seed):
    rng = random.Random(seed)
    coeffs = rng.sample(range(1, 20), n)
    data = HypersurfaceData.parse(",".join(f"x-{c}*y" for c in coeffs))
    w = tuple(rng.sample(range(1, n + 1), n))
    for i in range(1, n + 1):
        p = partial_product(data, w, i)
        assert p.divides(data.f)
        assert p.degree() == i


@given(st.integers(0, 2 ** 32))
def test_knorrer_property(seed):
    rng = random.Random(seed)
    mf = random_factorization(rng, rng.choice([1, 2]))
    big = knorrer(mf)
    assert big.size == 2 * mf.size
    assert verify_mf(big)
