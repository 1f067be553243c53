import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from momentpos.freepoly import (
    AllNonneg,
    NCPoly,
    Witness,
    isolation_matrices,
    nc_eval,
    pad,
    pencil_moment,
    polya_check,
)
from momentpos.matrix import DimensionError, Matrix

import oracles


def unit(n, i, j):
    return Matrix.unit(n, i, j)


def plain_eval(terms, mats):
    """Sum of coefficient * product over words, by list arithmetic."""
    n = len(mats[0])
    acc = [[0] * n for _ in range(n)]
    for word, c in terms.items():
        p = oracles.mat_eye(n)
        for k in word:
            p = oracles.mat_mul(p, mats[k - 1])
        acc = [[acc[i][j] + c * p[i][j] for j in range(n)] for i in range(n)]
    return acc


def ncpolys(max_letters=3, max_degree=3):
    def build(d):
        words = st.integers(min_value=0, max_value=max_degree).flatmap(
            lambda ell: st.tuples(*[st.integers(min_value=1, max_value=d)] * ell))
        return st.dictionaries(words, st.integers(min_value=-5, max_value=5), max_size=6).map(
            lambda t: NCPoly(d, t))
    return st.integers(min_value=1, max_value=max_letters).flatmap(build)


def test_eval_examples():
    p = NCPoly(2, {(1, 2): 1})
    assert nc_eval(p, [unit(3, 1, 2), unit(3, 2, 3)]) == Matrix.unit(3, 1, 3)
    one = NCPoly.one(2)
    assert nc_eval(one, [Matrix.integer([[2, 1], [0, 3]])] * 2) == Matrix.identity(2, 1)
    p = NCPoly(1, {(1,): 1}) + NCPoly(1, {(1,): 1})
    assert nc_eval(p, [Matrix.identity(2, 1)]) == Matrix.integer([[2, 0], [0, 2]])


def test_eval_size_mismatch():
    p = NCPoly(2, {(1, 2): 1})
    with pytest.raises(DimensionError):
        nc_eval(p, [Matrix.identity(2, 1), Matrix.identity(3, 1)])
    with pytest.raises(DimensionError):
        nc_eval(p, [Matrix.identity(2, 1)])


def test_isolation_examples():
    a1, a2 = isolation_matrices((2, 1), 2)
    assert a1 == unit(3, 2, 3) and a2 == unit(3, 1, 2)
    (b1,) = isolation_matrices((1,), 1)
    assert b1 == unit(2, 1, 2)
    p = NCPoly(2, {(1, 2): 1, (2, 1): -2})
    assert nc_eval(p, [a1, a2])[0, 2] == -2


def test_isolation_empty_word():
    with pytest.raises(ValueError, match=r"coefficient of empty word read from entry \(1,1\) "
                                         r"of evaluation at zero matrices"):
        isolation_matrices((), 2)


def test_polya_examples():
    assert isinstance(polya_check(NCPoly(2, {(1,): 3, (2, 2): 1})), AllNonneg)
    res = polya_check(NCPoly(2, {(1, 2): 1, (2, 1): -2}))
    assert isinstance(res, Witness)
    assert res.word == (2, 1) and res.coefficient == -2 and res.entry == (1, 3)
    assert list(res.matrices) == [unit(3, 2, 3), unit(3, 1, 2)]
    assert isinstance(polya_check(NCPoly(3, {})), AllNonneg)


def test_polya_constant_term_witness():
    res = polya_check(NCPoly(2, {(): -4, (1,): 2}))
    assert res.word == () and res.entry == (1, 1)
    assert nc_eval(res.poly, res.matrices)[0, 0] == -4


def test_polya_padding():
    p = NCPoly(2, {(1,): -1, (1, 2, 2): 1})
    res = polya_check(p, padded=True)
    assert all(m.size == 4 for m in res.matrices)
    assert nc_eval(p, res.matrices)[0, 1] == -1
    with pytest.raises(DimensionError):
        pad(Matrix.identity(3, 1), 2)


def test_pencil_examples():
    one = Matrix.integer([[1]])
    p = pencil_moment([one, one], 2)
    assert p.sorted_terms() == [((1, 1), 1), ((1, 2), 1), ((2, 1), 1), ((2, 2), 1)]
    p = pencil_moment([Matrix.integer([[0, 1], [1, 0]])], 3)
    assert p.coefficient((1, 1, 1)) == 0
    assert pencil_moment([Matrix.identity(3, 1)] * 2, 0) == NCPoly(2, {(): 3})


def test_json_round_trip_and_order():
    p = NCPoly(2, {(2,): 1, (1, 1): -3, (): 5, (1,): 2})
    assert NCPoly.from_json(p.to_json()) == p
    assert [t["word"] for t in p.to_json()["terms"]] == [[], [1], [2], [1, 1]]


def test_zero_coefficients_dropped():
    p = NCPoly(1, {(1,): 2}) - NCPoly(1, {(1,): 2})
    # the zero polynomial has degree -1 by convention
    assert p.terms == {} and p.degree == -1


@settings(max_examples=200, deadline=None)
@given(ncpolys(), st.integers(min_value=0, max_value=10 ** 6))
def test_free_polya_equivalence(p, seed):
    rng = random.Random(seed)
    size = p.degree + 1
    nonneg_everywhere = True
    for _ in range(100):
        mats = [[[rng.randint(0, 3) for _ in range(size)] for _ in range(size)] for _ in range(p.letters)]
        value = plain_eval(p.terms, mats)
        if any(v < 0 for row in value for v in row):
            nonneg_everywhere = False
            break
    res = polya_check(p)
    if isinstance(res, AllNonneg):
        assert nonneg_everywhere
    else:
        i, j = res.entry
        assert nc_eval(p, res.matrices)[i - 1, j - 1] == res.coefficient < 0
        assert plain_eval(p.terms, [[list(r) for r in m.rows] for m in res.matrices])[i - 1][j - 1] < 0


@settings(max_examples=100, deadline=None)
@given(ncpolys())
def test_isolation_reads_every_coefficient(p):
    for w, c in p.terms.items():
        if w:
            assert nc_eval(p, isolation_matrices(w, p.letters))[0, len(w)] == c
    # absent words read back as zero
    for w in itertools.product(range(1, p.letters + 1), repeat=2):
        if w not in p.terms:
            assert nc_eval(p, isolation_matrices(w, p.letters))[0, 2] == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=3), st.data())
def test_ring_structure(d, data):
    p = data.draw(ncpolys(d, 2).filter(lambda q: q.letters == d))
    q = data.draw(ncpolys(d, 2).filter(lambda q: q.letters == d))
    size = data.draw(st.integers(min_value=1, max_value=3))
    mats = [Matrix.integer(data.draw(st.lists(st.lists(st.integers(-2, 2), min_size=size, max_size=size),
                                              min_size=size, max_size=size))) for _ in range(d)]
    assert nc_eval(p * q, mats) == nc_eval(p, mats) * nc_eval(q, mats)
    assert nc_eval(p + q, mats) == nc_eval(p, mats) + nc_eval(q, mats)
    assert nc_eval(p - q, mats) == nc_eval(p, mats) - nc_eval(q, mats)


@pytest.mark.parametrize("s,d,n", [(s, d, n) for s in (1, 2, 3) for d in (1, 2, 3) for n in range(6)])
def test_pencil_matches_word_enumeration(s, d, n):
    rng = random.Random(100 * s + 10 * d + n)
    mats = [[[rng.randint(-2, 2) for _ in range(s)] for _ in range(s)] for _ in range(d)]
    p = pencil_moment([Matrix.integer(m) for m in mats], n)
    if n == 0:
        assert p == NCPoly(d, {(): s})
        return
    ref = oracles.all_word_traces(mats, n)
    for w, t in ref.items():
        assert p.coefficient(w) == t
    assert set(p.terms) <= set(ref)
