import itertools
from fractions import Fraction

import mpmath
import sympy
from hypothesis import given, settings, strategies as st

from momentpos.exactnum import EQ, GT, compare_algebraic
from momentpos.matrix import Matrix
from momentpos.spectra import analyze

import oracles

NONZERO = st.integers(min_value=-4, max_value=4).filter(bool)


def rational_value(e, candidates):
    """The candidate equal to a real eigenvalue, by exact comparison."""
    hits = [c for c in candidates if e.value.compare_rational(c) == EQ]
    assert len(hits) == 1
    return hits[0]


def signed_permutation(perm, signs):
    n = len(perm)
    return Matrix([[Fraction(signs[i]) if perm[i] == j else Fraction(0) for j in range(n)] for i in range(n)])


def test_diag_322():
    r = analyze(Matrix.diag([Fraction(3), Fraction(2), Fraction(2)]))
    assert [c.size for c in r.classes] == [1, 2]
    assert r.classes[0].modulus.compare_rational(3) == EQ
    assert r.classes[1].modulus.compare_rational(2) == EQ
    assert r.unique_dominant and r.dominant_multiplicity == 1 and r.dominant_sign == 1
    assert r.all_real and not r.nilpotent


def test_rotation_quarter_turn():
    r = analyze(Matrix.rational([[0, -1], [1, 0]]))
    assert len(r.classes) == 1 and r.classes[0].size == 2
    assert r.all_unit_modulus and r.all_roots_of_unity and r.group_order == 4
    assert not r.unique_dominant and not r.all_real


def test_pythagorean_rotation():
    r = analyze(Matrix.rational([["3/5", "-4/5"], ["4/5", "3/5"]]))
    assert r.all_unit_modulus and not r.all_roots_of_unity and r.group_order is None


def test_nilpotent_flag():
    r = analyze(Matrix.rational([[0, 1, 0], [0, 0, 1], [0, 0, 0]]))
    assert r.nilpotent and r.classes == [] and r.zero_multiplicity == 3


def test_plus_minus_pair_not_dominant():
    r = analyze(Matrix.diag([Fraction(2), Fraction(-2), Fraction(1)]))
    assert not r.unique_dominant and r.all_real
    assert [c.size for c in r.classes] == [2, 1]


def test_conjugate_pair_top_class():
    # eigenvalues 1 +- i and 1/2
    r = analyze(Matrix.rational([[1, -1, 0], [1, 1, 0], [0, 0, "1/2"]]))
    assert not r.unique_dominant and not r.all_real
    assert [c.size for c in r.classes] == [2, 1]
    lo, hi = r.classes[0].modulus.refine(Fraction(1, 10 ** 12)).interval
    assert lo * lo <= 2 <= hi * hi


def test_json_has_display_only_marker():
    out = analyze(Matrix.rational([[1, 1], [1, 0]])).to_json()
    assert out["flags"]["unique_dominant"] is True
    member = out["classes"][0]["members"][0]
    assert member["approx"]["display_only"] is True
    assert set(out["classes"][0]["modulus"]) >= {"poly", "interval"}


small_matrices = st.integers(min_value=1, max_value=3).flatmap(
    lambda s: st.lists(st.lists(st.integers(min_value=-3, max_value=3), min_size=s, max_size=s),
                       min_size=s, max_size=s))


@settings(max_examples=50, deadline=None)
@given(small_matrices)
def test_modulus_product_is_abs_det_squared(rows):
    a = Matrix.rational(rows)
    r = analyze(a)
    assert sum(c.size for c in r.classes) + r.zero_multiplicity == a.size
    det2 = sympy.Matrix(rows).det() ** 2
    if det2 == 0:
        assert r.zero_multiplicity > 0
        return
    width = Fraction(1, 2 ** 80)
    lo, hi = Fraction(1), Fraction(1)
    for c in r.classes:
        m = c.modulus.refine(width)
        lo *= m.lo ** (2 * c.size)
        hi *= m.hi ** (2 * c.size)
    assert lo <= Fraction(int(det2)) <= hi
    assert hi - lo < Fraction(1, 10 ** 6)


@settings(max_examples=50, deadline=None)
@given(small_matrices)
def test_classes_strictly_decreasing_and_match_sympy(rows):
    r = analyze(Matrix.rational(rows))
    for c1, c2 in zip(r.classes, r.classes[1:]):
        assert compare_algebraic(c1.modulus, c2.modulus) == GT
    # distinct moduli of the nonzero eigenvalues, from mpmath roots at 60 digits
    mpmath.mp.dps = 60
    cp = [int(c) for c in sympy.Matrix(rows).charpoly(oracles.X).all_coeffs()]
    while cp and cp[-1] == 0:
        cp.pop()
    mods = sorted((abs(z) for z in mpmath.polyroots(cp, maxsteps=400, extraprec=400)) if len(cp) > 1 else [],
                  reverse=True)
    distinct = []
    for m in mods:
        if not distinct or distinct[-1] - m > mpmath.mpf(10) ** -30:
            distinct.append(m)
    assert len(distinct) == len(r.classes)
    for c, m in zip(r.classes, distinct):
        lo, hi = c.modulus.refine(Fraction(1, 10 ** 20)).interval
        assert mpmath.mpf(lo.numerator) / lo.denominator - mpmath.mpf(10) ** -25 <= m
        assert m <= mpmath.mpf(hi.numerator) / hi.denominator + mpmath.mpf(10) ** -25


@settings(max_examples=40, deadline=None)
@given(st.lists(NONZERO, min_size=1, max_size=4), st.integers(min_value=0, max_value=10 ** 6))
def test_real_spectrum_members_sum_to_trace(diag, seed):
    rows = oracles.conjugated_diag(diag, oracles.seeded(seed))
    a = Matrix(rows)
    r = analyze(a)
    assert r.all_real
    total = Fraction(0)
    for e in r.eigenvalues:
        v = rational_value(e, set(Fraction(x) for x in diag))
        assert e.sign == (1 if v > 0 else -1)
        total += e.multiplicity * v
    assert total == oracles.trace(rows) == sum(diag)


@settings(max_examples=40, deadline=None)
@given(st.permutations(range(5)), st.lists(st.sampled_from([1, -1]), min_size=5, max_size=5),
       st.integers(min_value=1, max_value=5))
def test_roots_of_unity_order_is_exact(perm, signs, size):
    perm = [p for p in perm if p < size]
    a = signed_permutation(perm, signs[:size])
    r = analyze(a)
    assert r.all_roots_of_unity and r.all_unit_modulus
    o = r.group_order
    assert oracles.mat_pow([list(x) for x in a.rows], o) == oracles.mat_eye(size)
    # o is the exact order: no proper divisor works
    for d in range(1, o):
        if o % d == 0:
            assert oracles.mat_pow([list(x) for x in a.rows], d) != oracles.mat_eye(size)


def test_all_signed_permutations_of_size_three():
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            r = analyze(signed_permutation(perm, signs))
            assert r.all_roots_of_unity and r.group_order in (1, 2, 3, 4, 6)
