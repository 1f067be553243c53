from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from momentpos.matrix import (
    DimensionError,
    LinearFunctional,
    Matrix,
    char_poly,
    char_poly_rational,
    moment,
    moments,
    recurrence_coefficients,
    verify_cayley_hamilton,
)

import oracles

FRACS = st.fractions(min_value=-4, max_value=4, max_denominator=6)


def square(max_size=4):
    return st.integers(min_value=1, max_value=max_size).flatmap(
        lambda s: st.lists(st.lists(FRACS, min_size=s, max_size=s), min_size=s, max_size=s))


def test_rotation_moments():
    a = Matrix.rational([[0, -1], [1, 0]])
    assert [moment(a, None, n) for n in range(5)] == [2, 0, -2, 0, 2]


def test_identity_moments():
    a = Matrix.identity(2)
    assert {moment(a, LinearFunctional.trace(), n) for n in range(7)} == {2}


def test_lucas_moments():
    a = Matrix.rational([[1, 1], [1, 0]])
    assert [moment(a, None, n) for n in range(1, 6)] == [1, 3, 4, 7, 11]


def test_moment_negative_index():
    with pytest.raises(ValueError):
        moment(Matrix.identity(2), None, -1)


def test_functional_dimension_mismatch():
    phi = LinearFunctional.bilinear([1, 0, 0], [0, 1, 0])
    with pytest.raises(DimensionError):
        moment(Matrix.identity(2), phi, 3)
    with pytest.raises(DimensionError):
        moment(Matrix.identity(2), LinearFunctional.trace_form(Matrix.identity(3)), 1)


def test_char_poly_examples():
    p, c = char_poly(Matrix.rational([[1, 1], [1, 0]]))
    assert (p.coeffs, c) == ((-1, -1, 1), 1)
    p, c = char_poly(Matrix.identity(2))
    assert (p.coeffs, c) == ((1, -2, 1), 1)
    p, c = char_poly(Matrix.rational([["3/5", "-4/5"], ["4/5", "3/5"]]))
    assert (p.coeffs, c) == ((25, -6, 1), 5)


def test_cayley_hamilton_examples():
    assert verify_cayley_hamilton(Matrix.rational([[1, 1], [1, 0]]))
    assert verify_cayley_hamilton(Matrix.identity(5))
    rng = oracles.seeded(4)
    a = Matrix([[oracles.random_rational(rng) for _ in range(4)] for _ in range(4)])
    assert verify_cayley_hamilton(a)


def test_json_round_trip():
    a = Matrix.rational([["1/2", "-3"], ["0", "7/9"]])
    assert Matrix.from_json(a.to_json()) == a
    assert a.to_json() == {"size": 2, "rows": [["1/2", "-3"], ["0", "7/9"]]}
    for phi in (LinearFunctional.trace(), LinearFunctional.trace_form(a),
                LinearFunctional.bilinear(["1/3", 2], [0, "-1"])):
        assert LinearFunctional.from_json(phi.to_json()) == phi


def test_declared_size_mismatch():
    with pytest.raises(DimensionError):
        Matrix.from_json({"size": 3, "rows": [["1", "0"], ["0", "1"]]})


def test_kron_is_row_major():
    x = Matrix.integer([[1, 2], [3, 4]])
    y = Matrix.integer([[0, 5], [6, 7]])
    k = x.kron(y)
    for i in range(2):
        for j in range(2):
            for r in range(2):
                for c in range(2):
                    assert k[i * 2 + r, j * 2 + c] == x[i, j] * y[r, c]


@settings(max_examples=60, deadline=None)
@given(square())
def test_char_poly_matches_sympy(rows):
    a = Matrix(rows)
    assert char_poly_rational(a) == oracles.sympy_charpoly(rows)


@settings(max_examples=60, deadline=None)
@given(square())
def test_cayley_hamilton_always_holds(rows):
    assert verify_cayley_hamilton(Matrix(rows))


@settings(max_examples=60, deadline=None)
@given(square())
def test_newton_identities(rows):
    # e_k are the signed char poly coefficients; p_k the power sums
    s = len(rows)
    cp = oracles.sympy_charpoly(rows)
    e = [cp[s - k] for k in range(s + 1)]
    p = oracles.traces(rows, s + 1)
    for k in range(1, s + 1):
        assert k * e[k] + sum(e[i] * p[k - i] for i in range(k)) == 0


@settings(max_examples=60, deadline=None)
@given(square())
def test_moment_recurrence_and_direct_powers(rows):
    a = Matrix(rows)
    s = a.size
    ref = oracles.traces(rows, 4 * s + 1)
    assert moments(a, None, 4 * s + 1) == ref
    coeffs = recurrence_coefficients(a)
    for n in range(s, 4 * s + 1):
        assert ref[n] == sum(c * ref[n - i] for i, c in enumerate(coeffs, start=1))


@settings(max_examples=40, deadline=None)
@given(square(3), st.integers(min_value=0, max_value=9))
def test_scaled_moment(rows, n):
    a = Matrix(rows)
    b, c = a.scaled_integer()
    assert all(isinstance(x, int) for x in b.entries())
    assert moment(b.map(Fraction), None, n) == c ** n * moment(a, None, n)


@settings(max_examples=40, deadline=None)
@given(square(3), st.integers(min_value=0, max_value=8), st.data())
def test_functionals_match_direct_products(rows, n, data):
    s = len(rows)
    a = Matrix(rows)
    m = data.draw(st.lists(st.lists(FRACS, min_size=s, max_size=s), min_size=s, max_size=s))
    v = data.draw(st.lists(FRACS, min_size=s, max_size=s))
    w = data.draw(st.lists(FRACS, min_size=s, max_size=s))
    power = oracles.mat_pow(rows, n)
    assert moment(a, LinearFunctional.trace_form(Matrix(m)), n) == oracles.trace(oracles.mat_mul(power, m))
    direct = sum(v[i] * power[i][j] * w[j] for i in range(s) for j in range(s))
    assert moment(a, LinearFunctional.bilinear(v, w), n) == direct
    phi = LinearFunctional.bilinear(v, w)
    assert moments(a, phi, n + 1)[n] == direct
