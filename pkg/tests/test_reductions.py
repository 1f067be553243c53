import itertools
import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from momentpos.commpoly import CommPoly
from momentpos.matrix import DimensionError, Matrix
from momentpos.reductions import (
    MortalityInstance,
    build_gadget_N,
    comm_moment_identity,
    commpoly_embed,
    lift_mortality,
    lifted_trace,
    mortality_search,
    trace_gadget_check,
)

import oracles


def inst(*mats):
    return MortalityInstance(tuple(Matrix.integer(m) for m in mats))


def plain_product(mats, exps):
    p = oracles.mat_eye(len(mats[0]))
    for m, e in zip(mats, exps):
        p = oracles.mat_mul(p, oracles.mat_pow(m, e))
    return p


def is_zero(m):
    return all(v == 0 for row in m for v in row)


def test_gadget_n_examples():
    assert build_gadget_N(1) == Matrix.integer([[1, 0], [0, 1]])
    n2 = build_gadget_N(2)
    ones = {(i + 1, j + 1) for i in range(5) for j in range(5) if n2[i, j]}
    assert ones == {(1, 1), (1, 4), (4, 1), (4, 4), (5, 5)}
    assert all(n2[i, j] in (0, 1) for i in range(5) for j in range(5))
    for s in range(1, 5):
        n = build_gadget_N(s)
        assert n == n.transpose() and n.trace() == s + 1


def test_trace_gadget_examples():
    assert trace_gadget_check(Matrix.integer([[1, 2], [3, 4]]), -5) == 25
    assert trace_gadget_check(Matrix.integer([[0, 0], [0, 0]]), 0) == 0
    assert trace_gadget_check(Matrix.integer([[0, 0], [0, 0]]), -1) == -1


def test_lift_examples():
    e12 = inst([[0, 1], [0, 0]])
    b = lift_mortality(e12)
    assert len(b) == 2 and all(m.size == 5 for m in b)
    assert lifted_trace(e12, [2, 1]) == -1
    assert lifted_trace(e12, [1, 1]) == 0
    ident = inst([[1, 0], [0, 1]])
    for n1 in range(4):
        for n2 in range(0, 6, 2):
            assert lifted_trace(ident, [n1, n2]) >= 0
    with pytest.raises(ValueError):
        lifted_trace(e12, [1])


def test_mortality_search_examples():
    assert mortality_search(inst([[0, 1], [0, 0]]), 2) == (2,)
    assert mortality_search(inst([[1, 0], [0, 1]]), 5) is None
    assert mortality_search(inst([[0, 1], [0, 0]], [[0, 0], [1, 0]]), 2) == (2, 0)


def test_embed_examples():
    a, m = commpoly_embed(inst([[2]]), Matrix.integer([[1]]))
    assert a == Matrix([[CommPoly.var(1, 1, 2)]]) and m == Matrix.integer([[1]])
    a, m = commpoly_embed(inst([[2]], [[3]]), Matrix.integer([[1]]))
    x1, x2 = CommPoly.var(2, 1), CommPoly.var(2, 2)
    zero = CommPoly.constant(2, 0)
    assert a == Matrix([[x1 * 2, x2 * 3], [zero, x2 * 3]])
    assert m == Matrix.integer([[1, 1], [1, 1]])
    with pytest.raises(DimensionError):
        commpoly_embed(inst([[2]]), Matrix.identity(2, 1))


def test_comm_identity_examples():
    poly, report = comm_moment_identity(inst([[2]], [[3]]), Matrix.integer([[1]]), 2)
    x1, x2 = CommPoly.var(2, 1), CommPoly.var(2, 2)
    assert poly == 4 * x1 * x1 + 6 * x1 * x2 + 18 * x2 * x2
    assert report["equal"]
    assert sorted(t["c"] for t in report["terms"]) == [1, 1, 2]
    poly, report = comm_moment_identity(inst([[1, 2], [0, 1]]), Matrix.integer([[1, 0], [1, 1]]), 3)
    a3 = oracles.mat_pow([[1, 2], [0, 1]], 3)
    assert poly == CommPoly(1, {(3,): int(oracles.trace(oracles.mat_mul(a3, [[1, 0], [1, 1]])))})
    poly, _ = comm_moment_identity(inst([[2]], [[3]], [[5]]), Matrix.integer([[1]]), 1)
    assert poly == CommPoly(3, {(1, 0, 0): 2, (0, 1, 0): 6, (0, 0, 1): 15})


def test_json_round_trip():
    m = inst([[1, -2], [0, 3]], [[0, 1], [1, 0]])
    assert MortalityInstance.from_json(m.to_json()) == m
    with pytest.raises(DimensionError):
        inst([[1]], [[1, 0], [0, 1]])


@settings(max_examples=500, deadline=None)
@given(st.integers(min_value=1, max_value=3).flatmap(
    lambda s: st.lists(st.lists(st.integers(-9, 9), min_size=s, max_size=s), min_size=s, max_size=s)),
    st.integers(-200, 200))
def test_trace_gadget_identity(x, a):
    assert trace_gadget_check(Matrix.integer(x), a) == a + sum(v * v for row in x for v in row)


mortality_instances = st.integers(min_value=1, max_value=2).flatmap(
    lambda s: st.lists(st.lists(st.lists(st.integers(-1, 1), min_size=s, max_size=s), min_size=s, max_size=s),
                       min_size=1, max_size=2))


@settings(max_examples=100, deadline=None)
@given(mortality_instances)
def test_lifted_equivalence(mats):
    m = inst(*mats)
    bound = 4
    brute = [e for e in itertools.product(range(bound + 1), repeat=m.d) if is_zero(plain_product(mats, e))]
    found = mortality_search(m, bound)
    assert (found is not None) == bool(brute)
    if found is not None:
        assert is_zero(plain_product(mats, found))
        assert min(brute, key=lambda t: (sum(t), [-x for x in t])) == found
    negative = [e for e in itertools.product(range(bound + 1), repeat=m.d) if lifted_trace(m, list(e) + [1]) < 0]
    assert bool(negative) == bool(brute)
    assert set(negative) == set(brute)
    # even last exponents never produce a negative trace
    for e in itertools.product(range(3), repeat=m.d):
        assert lifted_trace(m, list(e) + [2]) >= 0
        assert lifted_trace(m, list(e) + [0]) >= 0


def sympy_trace_power(mats, n_matrix, n):
    """tr(A^n M) with the embedding rebuilt in sympy from its definition."""
    d, s = len(mats), len(mats[0])
    xs = sympy.symbols(f"x1:{d + 1}")
    big = sympy.zeros(d * s, d * s)
    for i in range(d):
        e = sympy.zeros(d, d)
        for j in range(i + 1):
            e[j, i] = 1
        big += sympy.kronecker_product(e, sympy.Matrix(mats[i])) * xs[i]
    m = sympy.kronecker_product(sympy.ones(d, d), sympy.Matrix(n_matrix))
    return sympy.Poly(sympy.expand((big ** n * m).trace()), *xs)


@pytest.mark.parametrize("s,d,n", [(s, d, n) for s in (1, 2) for d in (1, 2) for n in range(1, 6)])
def test_comm_identity_all_small_sizes(s, d, n):
    rng = random.Random(1000 * s + 100 * d + n)
    for _ in range(3):
        mats = [[[rng.randint(-2, 2) for _ in range(s)] for _ in range(s)] for _ in range(d)]
        nm = [[rng.randint(-2, 2) for _ in range(s)] for _ in range(s)]
        poly, report = comm_moment_identity(inst(*mats), Matrix.integer(nm), n)
        assert report["equal"]
        assert all(t["c"] >= 1 for t in report["terms"])
        ref = sympy_trace_power(mats, nm, n)
        assert {tuple(k): int(v) for k, v in ref.as_dict().items()} == dict(poly.terms)
