import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from momentpos import deciders as dc
from momentpos.certificates import verify
from momentpos.commpoly import CommPoly
from momentpos.exactnum import Gaussian, parse_rational
from momentpos.lrs import LRSSpec, terms
from momentpos.matrix import Matrix

import oracles

F = Fraction

# Pythagorean quadruples x^2 + y^2 + u^2 + v^2 = r^2 with one slot zero allowed
QUADRUPLES = [(1, 2, 2, 0, 3), (2, 3, 6, 0, 7), (1, 4, 8, 0, 9), (4, 4, 7, 0, 9), (0, 3, 4, 0, 5),
              (1, 1, 1, 1, 2), (1, 1, 3, 5, 6), (2, 4, 5, 6, 9)]


def diag(*xs):
    return Matrix.diag([F(x) for x in xs])


def power_sums(values, count):
    """tr(D^n) for n = 0..count-1 of a planted diagonal D."""
    vals = [F(v) for v in values]
    return [sum(v ** n for v in vals) for n in range(count)]


def first_negative(seq):
    return next((n for n, v in enumerate(seq) if v < 0), None)


def rows_of(a):
    return [list(r) for r in a.rows]


def gaussian_unitary(rng, s):
    """Product of random Givens-like factors [[a, -conj b], [b, conj a]] and
    unit diagonals over Q[i]."""
    u = Matrix.identity(s, Gaussian(1))
    units = [Gaussian(1), Gaussian(0, 1), Gaussian(-1), Gaussian(0, -1), Gaussian(F(3, 5), F(4, 5))]
    for _ in range(3):
        if s > 1:
            x, y, p, q, r = QUADRUPLES[rng.randrange(len(QUADRUPLES))]
            parts = [x, y, p, q]
            rng.shuffle(parts)
            parts = [v * rng.choice((1, -1)) for v in parts]
            a = Gaussian(F(parts[0], r), F(parts[1], r))
            b = Gaussian(F(parts[2], r), F(parts[3], r))
            i, j = rng.sample(range(s), 2)
            g = [[Gaussian(int(r1 == c1)) for c1 in range(s)] for r1 in range(s)]
            g[i][i], g[i][j], g[j][i], g[j][j] = a, -b.conjugate(), b, a.conjugate()
            u = u * Matrix(g)
        u = u * Matrix.diag([rng.choice(units) for _ in range(s)], Gaussian(0))
    return u


def verify_ok(dec):
    res = verify(dec.to_json())
    assert res.ok, res.reason
    return res


# ---------------------------------------------------------------------------
# examples
# ---------------------------------------------------------------------------

def test_dominant_examples():
    d = dc.decide_dominant(diag(2, -1))
    assert d.verdict == dc.YES and d.certificate.data["N"] == 0 and d.certificate.data["checked"] == ["2"]
    d = dc.decide_dominant(diag(2, -3))
    assert d.verdict == dc.NO and (d.certificate.data["n"], d.certificate.data["value"]) == (1, "-1")
    d = dc.decide_dominant(diag(3, 2, 2))
    assert d.verdict == dc.YES and d.certificate.data["N"] == 2
    assert d.certificate.data["checked"][:2] == ["3", "7"]


def test_dominant_rejects_ties():
    with pytest.raises(ValueError, match="no unique dominant eigenvalue"):
        dc.decide_dominant(diag(2, -2))


def test_dominant_nilpotent_and_single_class():
    assert dc.decide_dominant(Matrix.rational([[0, 1], [0, 0]])).verdict == dc.YES
    assert dc.decide_dominant(diag(5, 0, 0)).verdict == dc.YES
    assert dc.decide_dominant(diag(-5, 0)).verdict == dc.NO


def test_dominant_budget_exhaustion_is_unknown():
    a = diag(F(100, 99), -1, 1, 1)
    d = dc.decide_dominant(a, budget=dc.Budget(max_moment_index=10))
    assert d.verdict == dc.UNKNOWN and d.certificate.kind == dc.BUDGET_EXHAUSTED
    assert d.certificate.data["N"] > 10
    assert dc.decide_dominant(a).verdict == dc.YES


def test_real_spectrum_examples():
    assert dc.decide_real_spectrum(diag(1, -1)).verdict == dc.YES
    assert dc.decide_real_spectrum(diag(2, -2, 1)).verdict == dc.YES
    d = dc.decide_real_spectrum(diag(2, -2, -1))
    assert d.verdict == dc.NO and (d.certificate.data["n"], d.certificate.data["value"]) == (1, "-1")


def test_real_spectrum_rejects_complex():
    with pytest.raises(ValueError):
        dc.decide_real_spectrum(Matrix.rational([[0, -1], [1, 0]]))


def test_orthogonal_examples():
    cycle = Matrix.rational([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    d = dc.decide_orthogonal(cycle)
    assert d.verdict == dc.YES and d.certificate.kind == dc.FINITE_GROUP
    assert d.certificate.data["order"] == 3 and d.certificate.data["traces"] == ["3", "0", "0"]
    d = dc.decide_orthogonal(Matrix.rational([[0, -1], [1, 0]]))
    assert d.verdict == dc.NO and (d.certificate.data["n"], d.certificate.data["value"]) == (2, "-2")
    d = dc.decide_orthogonal(Matrix.rational([["3/5", "-4/5"], ["4/5", "3/5"]]))
    assert d.verdict == dc.NO and (d.certificate.data["n"], d.certificate.data["value"]) == (2, "-14/25")


def test_orthogonal_rejects_non_orthogonal():
    with pytest.raises(ValueError):
        dc.decide_orthogonal(diag(2, 1))


def test_torus_strand_certifies_irrational_rotation_block():
    # tr = 2 + 2 cos(n t) >= 0 with t irrational in turns
    a = Matrix.rational([["3/5", "-4/5", 0, 0], ["4/5", "3/5", 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    d = dc.decide_orthogonal(a)
    assert d.verdict == dc.YES and d.certificate.kind == dc.TORUS_LOWER_BOUND
    assert parse_rational(d.certificate.data["lower_bound"]) >= 0
    verify_ok(d)


def test_invariant_polys_examples():
    x = CommPoly.var(1, 1)
    assert dc.invariant_polys([Matrix.rational([[-1]])], 2) == [x * x - CommPoly.constant(1, 1)]
    assert dc.invariant_polys([Matrix.identity(1)], 1) == [x - CommPoly.constant(1, 1)]
    assert len(dc.invariant_polys([Matrix.identity(2)], 1)) == 4
    assert dc.invariant_polys([Matrix.rational([[0, -1], [1, 0]])], 1) == []
    with pytest.raises(ValueError):
        dc.invariant_polys([Matrix.identity(1)], 0)


@pytest.mark.parametrize("gen,degree", [
    ([[0, -1], [1, 0]], 2),
    ([[0, 1], [1, 0]], 2),
    ([[-1, 0], [0, 1]], 3),
    ([["3/5", "-4/5"], ["4/5", "3/5"]], 2),
])
def test_invariant_polys_satisfy_conditions(gen, degree):
    g = Matrix.rational(gen)
    basis = dc.invariant_polys([g], degree)
    xs = sympy.symbols("x0:4")
    xm = sympy.Matrix(2, 2, xs)
    gm = sympy.Matrix(2, 2, [sympy.Rational(str(v)) for v in g.entries()])
    moved = list(gm * xm)
    for p in basis:
        expr = sum(c * sympy.prod([v ** e for v, e in zip(xs, ex)]) for ex, c in p.terms.items())
        assert expr.subs(dict(zip(xs, (1, 0, 0, 1)))) == 0
        assert sympy.expand(expr.subs(dict(zip(xs, moved)), simultaneous=True) - expr) == 0
    # dimension check against an independent sympy null space
    monos = sorted(itertools.chain.from_iterable(
        itertools.combinations_with_replacement(xs, k) for k in range(degree + 1)), key=str)
    coeffs = sympy.symbols(f"c0:{len(monos)}")
    generic = sum(c * sympy.prod(m) for c, m in zip(coeffs, monos))
    conds = [generic.subs(dict(zip(xs, (1, 0, 0, 1))))]
    diff = sympy.Poly(sympy.expand(generic.subs(dict(zip(xs, moved)), simultaneous=True) - generic), *xs)
    conds.extend(diff.coeffs())
    system = sympy.Matrix([[sympy.expand(e).coeff(c) for c in coeffs] for e in conds])
    assert len(basis) == len(coeffs) - system.rank()


def test_psi_examples():
    i = Gaussian(0, 1)
    assert dc.psi_embed(Matrix([[i]])) == Matrix.rational([[0, -1], [1, 0]])
    assert dc.psi_embed(Matrix.identity(3, Gaussian(1))) == Matrix.identity(6)
    assert dc.psi_embed(Matrix([[i]])) ** 2 == dc.psi_embed(Matrix([[Gaussian(-1)]])) == -Matrix.identity(2)
    with pytest.raises(ValueError):
        dc.psi_embed(Matrix([[Gaussian(2)]]))


def test_unitary_examples():
    i = Gaussian(0, 1)
    assert dc.decide_unitary(Matrix.identity(2, Gaussian(1))).verdict == dc.YES
    d = dc.decide_unitary(Matrix([[i]]))
    assert d.verdict == dc.NO and d.certificate.data["n"] == 1
    d = dc.decide_unitary(Matrix.diag([Gaussian(1), i], Gaussian(0)))
    assert d.verdict == dc.NO and d.certificate.data["n"] == 1
    verify_ok(d)


def test_eta_gamma_examples():
    assert dc.eta_ge(diag(1, -1), 1, 0).verdict == dc.YES
    assert dc.eta_ge(diag(5), 1, 1).verdict == dc.YES
    d = dc.eta_ge(diag(-1), 1, 0)
    assert d.verdict == dc.NO and (d.certificate.data["n"], d.certificate.data["value"]) == (1, "-1")
    assert dc.gamma_le(diag(-1), 1, -1, 2, 1).verdict == dc.YES
    assert dc.gamma_le(diag(2), 4, -100, 2, 1).verdict == dc.YES
    d = dc.gamma_le(diag(1), 1, 0)
    assert d.verdict == dc.NO and d.certificate.data["value"] == "1"
    assert dc.eta_ge(diag(3), 2, 10 ** 6).verdict == dc.YES


def test_classify_general_examples():
    d = dc.classify_general(diag(2, -1), F(1))
    assert d.verdict == dc.YES and d.criterion == "i" and d.certificate.data["k"] == 0
    d = dc.classify_general(diag(-2, 1))
    assert d.verdict == dc.NO and d.criterion == "iii" and d.certificate.data["n"] == 1
    d = dc.classify_general(diag(2, -2, -1), F(1), 2, 1)
    assert d.verdict == dc.NO and d.criterion == "ii" and d.certificate.data["value"] == "-1"
    with pytest.raises(ValueError):
        dc.classify_general(Matrix.zeros(2))


def test_decide_lrs_examples():
    d = dc.decide_lrs(LRSSpec.rational([1, 1], [1, 1]))
    assert d.verdict == dc.YES
    d = dc.decide_lrs(LRSSpec.rational([-1], [1]))
    assert d.verdict == dc.NO and (d.certificate.data["n"], d.certificate.data["value"]) == (2, "-1")
    d = dc.decide_lrs(LRSSpec.rational([0, -1], [1, 0]))
    assert d.verdict == dc.NO and (d.certificate.data["n"], d.certificate.data["value"]) == (3, "-1")


def test_decide_lrs_periodic_yes():
    # period 3 pattern 1, 0, 2 from the roots of x^3 - 1
    d = dc.decide_lrs(LRSSpec.rational([0, 0, 1], [1, 0, 2]))
    assert d.verdict == dc.YES
    verify_ok(d)


def test_budget_json_round_trip():
    b = dc.Budget(max_moment_index=50, relation_bound=3, tolerance=F(1, 1024))
    assert dc.Budget.from_json(b.to_json()) == b
    with pytest.raises(ValueError):
        dc.Budget(max_moment_index=0)


def test_auto_dispatch_order():
    cycle = Matrix.rational([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    assert dc.decide_matrix(cycle).certificate.kind == dc.FINITE_GROUP
    assert dc.decide_matrix(diag(3, 1)).certificate.kind == dc.DOMINANCE_BOUND
    assert dc.decide_matrix(diag(2, -2, 1)).verdict == dc.YES


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

planted_dominant = st.tuples(
    st.fractions(min_value=F(1, 2), max_value=4, max_denominator=3),
    st.sampled_from([1, -1]),
    st.integers(min_value=1, max_value=2),
    st.lists(st.fractions(min_value=-1, max_value=1, max_denominator=4), min_size=0, max_size=3),
    st.integers(min_value=0, max_value=10 ** 6),
)


@settings(max_examples=40, deadline=None)
@given(planted_dominant)
def test_dominant_matches_brute_force(data):
    top, sign, k, rest, seed = data
    # shrink the others strictly below |top|
    rest = [r * top * F(9, 10) for r in rest]
    values = [sign * top] * k + rest
    rows = oracles.conjugated_diag(values, oracles.seeded(seed))
    a = Matrix(rows)
    assert oracles.traces(rows, 4) == power_sums(values, 4)
    d = dc.decide_dominant(a)
    if d.verdict == dc.YES:
        big_n = d.certificate.data["N"]
        assert first_negative(power_sums(values, 3 * big_n + 11)) is None
    else:
        assert d.verdict == dc.NO
        n = d.certificate.data["n"]
        seq = power_sums(values, n + 1)
        assert first_negative(seq) == n and F(d.certificate.data["value"]) == seq[n]
    verify_ok(d)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(min_value=-3, max_value=3).filter(bool), min_size=1, max_size=3),
       st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=3).filter(bool), max_size=2),
       st.integers(min_value=0, max_value=10 ** 6))
def test_real_spectrum_matches_brute_force(pairs, singles, seed):
    values = list(singles)
    for r in pairs:
        values += [F(r), F(-r)]
    rows = oracles.conjugated_diag(values, oracles.seeded(seed))
    d = dc.decide_real_spectrum(Matrix(rows))
    expected = first_negative(power_sums(values, 201))
    if expected is None:
        assert d.verdict == dc.YES
    else:
        assert d.verdict == dc.NO and d.certificate.data["n"] == expected
    if not singles:
        assert d.verdict == dc.YES
    verify_ok(d)


signed_perms = st.integers(min_value=1, max_value=6).flatmap(
    lambda s: st.tuples(st.permutations(range(s)), st.lists(st.sampled_from([1, -1]), min_size=s, max_size=s)))


def signed_permutation(perm, signs):
    n = len(perm)
    return Matrix([[F(signs[i]) if perm[i] == j else F(0) for j in range(n)] for i in range(n)])


@settings(max_examples=60, deadline=None)
@given(signed_perms)
def test_finite_group_path_is_complete(data):
    a = signed_permutation(*data)
    d = dc.decide_orthogonal(a)
    assert d.verdict in (dc.YES, dc.NO)
    rows = rows_of(a)
    o = 1
    while oracles.mat_pow(rows, o) != oracles.mat_eye(a.size):
        o += 1
    table = oracles.traces(rows, o)
    expected = first_negative(table)
    if expected is None:
        assert d.verdict == dc.YES and d.certificate.data["order"] == o
        assert [F(t) for t in d.certificate.data["traces"]] == table
    else:
        assert d.verdict == dc.NO and d.certificate.data["n"] == expected
    verify_ok(d)


@settings(max_examples=40, deadline=None)
@given(signed_perms)
def test_torus_strand_never_contradicts_finite_table(data):
    a = signed_permutation(*data)
    rows = rows_of(a)
    o = 1
    while oracles.mat_pow(rows, o) != oracles.mat_eye(a.size):
        o += 1
    negative = first_negative(oracles.traces(rows, o)) is not None
    d = dc.decide_orthogonal(a, dc.Budget(max_moment_index=o + 5, minimization_depth=2000),
                             finite_group=False)
    if negative:
        assert d.verdict != dc.YES
    if d.verdict == dc.YES:
        assert parse_rational(d.certificate.data["lower_bound"]) >= 0
    verify_ok(d)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(min_value=-3, max_value=3).filter(bool), min_size=1, max_size=4))
def test_deciders_agree_on_diagonals(values):
    a = diag(*values)
    rep = dc.analyze(a)
    verdicts = {"general": dc.classify_general(a, F(1, 10), 2, 1, report=rep).verdict,
                "real": dc.decide_real_spectrum(a, report=rep).verdict}
    if rep.unique_dominant:
        verdicts["dominant"] = dc.decide_dominant(a, report=rep).verdict
    if a.is_orthogonal():
        verdicts["orthogonal"] = dc.decide_orthogonal(a, report=rep).verdict
    decided = {v for v in verdicts.values() if v != dc.UNKNOWN}
    assert len(decided) == 1, verdicts
    expected = dc.NO if first_negative(power_sums(values, 60)) is not None else dc.YES
    assert decided == {expected}


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=1, max_value=3), st.integers(min_value=0, max_value=10 ** 6))
def test_psi_is_multiplicative_and_orthogonal(s, seed):
    rng = random.Random(seed)
    u, v = gaussian_unitary(rng, s), gaussian_unitary(rng, s)
    assert u.is_unitary() and v.is_unitary()
    pu, pv = dc.psi_embed(u), dc.psi_embed(v)
    assert dc.psi_embed(u * v) == pu * pv
    prod = oracles.mat_mul(rows_of(pu.transpose()), rows_of(pu))
    assert prod == oracles.mat_eye(2 * s)
    # real part of tr(U^n) is half the trace of psi(U)^n
    for n in range(4):
        assert 2 * (u ** n).trace().re == (pu ** n).trace()


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=2), st.integers(min_value=0, max_value=10 ** 6))
def test_unitary_verdicts_against_direct_powers(s, seed):
    u = gaussian_unitary(random.Random(seed), s)
    d = dc.decide_unitary(u, dc.Budget(max_moment_index=200, minimization_depth=2000))
    vals = [(u ** n).trace() for n in range(41)]
    bad = next((n for n, t in enumerate(vals) if t.im != 0 or t.re < 0), None)
    if d.verdict == dc.NO:
        assert d.certificate.data["n"] == bad
    elif d.verdict == dc.YES:
        assert bad is None
    verify_ok(d)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=1, max_size=3),
       st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=3, max_size=3))
def test_decide_lrs_never_contradicts_terms(coeffs, initial):
    spec = LRSSpec(tuple(coeffs), tuple(initial[: len(coeffs)]))
    d = dc.decide_lrs(spec, dc.Budget(max_moment_index=400, minimization_depth=2000))
    seq = oracles.recurrence_terms(coeffs, initial[: len(coeffs)], 300)
    neg = first_negative(seq)
    if d.verdict == dc.YES:
        assert neg is None
    elif d.verdict == dc.NO:
        n = d.certificate.data["n"]
        assert seq[n - 1] < 0 and (neg is None or neg + 1 == n)
    assert terms(spec, 10) == seq[:10]
    verify_ok(d)
