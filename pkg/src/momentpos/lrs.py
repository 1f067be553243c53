"""Linear recurrence sequences and their bridges to moment sequences.

Terms are indexed from 1: ``u_n = a_1 u_{n-1} + ... + a_s u_{n-s}`` for
``n > s`` with initial values ``u_1..u_s``. A sequence of generalized moments
``phi(A^n)`` becomes an LRS through the Cayley-Hamilton coefficients of A;
conversely an LRS over a field is ``v^t A^{n-s} w`` for its companion matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .commpoly import CommPoly
from .exactnum import Gaussian, format_rational, parse_rational
from .matrix import LinearFunctional, Matrix, iter_moments, recurrence_coefficients

RATIONAL = "rational"
GAUSSIAN = "gaussian"


def _zero_like(x):
    return x - x


@dataclass(frozen=True)
class LRSSpec:
    coeffs: tuple
    initial: tuple
    ring: str = RATIONAL

    def __post_init__(self):
        if len(self.coeffs) != len(self.initial) or not self.coeffs:
            raise ValueError("order must equal the number of coefficients and initial values, and be >= 1")
        if not (self.ring in (RATIONAL, GAUSSIAN) or self.ring.startswith("intpoly:")):
            raise ValueError(f"unknown ring tag {self.ring!r}")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @staticmethod
    def rational(coeffs: Sequence, initial: Sequence) -> "LRSSpec":
        return LRSSpec(tuple(parse_rational(c) for c in coeffs),
                       tuple(parse_rational(u) for u in initial), RATIONAL)

    @staticmethod
    def gaussian(coeffs: Sequence, initial: Sequence) -> "LRSSpec":
        return LRSSpec(tuple(Gaussian.coerce(c) if not isinstance(c, dict) else Gaussian.from_json(c)
                             for c in coeffs),
                       tuple(Gaussian.coerce(u) if not isinstance(u, dict) else Gaussian.from_json(u)
                             for u in initial), GAUSSIAN)

    @staticmethod
    def intpoly(nvars: int, coeffs: Sequence[CommPoly], initial: Sequence[CommPoly]) -> "LRSSpec":
        return LRSSpec(tuple(coeffs), tuple(initial), f"intpoly:{nvars}")

    def to_json(self) -> dict:
        def enc(x):
            if isinstance(x, Fraction):
                return format_rational(x)
            return x.to_json()
        return {"ring": self.ring, "coeffs": [enc(c) for c in self.coeffs],
                "initial": [enc(u) for u in self.initial]}

    @staticmethod
    def from_json(obj) -> "LRSSpec":
        ring = obj.get("ring", RATIONAL)
        if ring == RATIONAL:
            return LRSSpec.rational(obj["coeffs"], obj["initial"])
        if ring == GAUSSIAN:
            return LRSSpec.gaussian(obj["coeffs"], obj["initial"])
        if ring.startswith("intpoly:"):
            d = int(ring.split(":", 1)[1])

            def dec(x):
                if isinstance(x, dict):
                    p = CommPoly.from_json(x)
                    if p.nvars != d:
                        raise ValueError("polynomial variable count does not match the ring tag")
                    return p
                return CommPoly.constant(d, int(x))
            return LRSSpec.intpoly(d, [dec(c) for c in obj["coeffs"]], [dec(u) for u in obj["initial"]])
        raise ValueError(f"unknown ring tag {ring!r}")


def terms(spec: LRSSpec, count: int) -> list:
    """``[u_1, ..., u_count]``."""
    s = spec.order
    out = list(spec.initial[:count])
    while len(out) < count:
        n = len(out)
        acc = spec.coeffs[0] * out[n - 1]
        for i in range(1, s):
            acc = acc + spec.coeffs[i] * out[n - 1 - i]
        out.append(acc)
    return out


def iter_terms(spec: LRSSpec):
    """Yield ``(n, u_n)`` for n = 1, 2, ... indefinitely."""
    s = spec.order
    window = list(spec.initial)
    for n, u in enumerate(window, start=1):
        yield n, u
    n = s + 1
    while True:
        acc = spec.coeffs[0] * window[-1]
        for i in range(1, s):
            acc = acc + spec.coeffs[i] * window[-1 - i]
        window.append(acc)
        window.pop(0)
        yield n, acc
        n += 1


def term(spec: LRSSpec, n: int):
    if n < 1:
        raise ValueError("terms indexed from 1")
    return terms(spec, n)[n - 1]


def companion(spec: LRSSpec) -> tuple[Matrix, tuple, tuple]:
    """Companion matrix with first column ``(a_1..a_s)`` and ones on the
    superdiagonal, ``v = (u_s..u_1)`` and ``w = e_1``; then
    ``u_n = v^t A^{n-s} w`` for n >= s."""
    if spec.ring not in (RATIONAL, GAUSSIAN):
        raise ValueError("companion bridge is for rational or Gaussian-rational sequences")
    s = spec.order
    zero = _zero_like(spec.coeffs[0])
    one = zero + 1
    rows = []
    for i in range(s):
        row = [zero] * s
        row[0] = spec.coeffs[i]
        if i + 1 < s:
            row[i + 1] = one
        rows.append(row)
    v = tuple(reversed(spec.initial))
    w = tuple(one if i == 0 else zero for i in range(s))
    return Matrix(rows), v, w


def from_moments(a: Matrix, phi: LinearFunctional | None = None) -> LRSSpec:
    """The order-s LRS with ``u_n = phi(A^n)`` for all n >= 1."""
    phi = phi or LinearFunctional.trace()
    s = a.size
    coeffs = recurrence_coefficients(a)
    initial = []
    for n, value in iter_moments(a, phi):
        if n == 0:
            continue
        initial.append(Fraction(value))
        if n == s:
            break
    return LRSSpec(tuple(coeffs), tuple(initial), RATIONAL)


def minimal_recurrence(values: Sequence) -> list:
    """Berlekamp-Massey over a field: shortest ``(a_1..a_L)`` such that
    ``values[n] = sum a_i values[n-i]`` for all valid n. A sequence of order at
    most s is pinned down by 2s terms."""
    values = [Fraction(v) if isinstance(v, int) else v for v in values]
    if not values:
        return []
    zero = _zero_like(values[0])
    one = zero + 1
    c = [one]
    b = [one]
    length, m, bb = 0, 1, one
    for n, x in enumerate(values):
        d = x
        for i in range(1, length + 1):
            d = d + c[i] * values[n - i]
        if d == 0:
            m += 1
            continue
        coef = d / bb
        t = list(c)
        need = len(b) + m
        if len(c) < need:
            c = c + [zero] * (need - len(c))
        for i, bi in enumerate(b):
            c[i + m] = c[i + m] - coef * bi
        if 2 * length <= n:
            length = n + 1 - length
            b, bb, m = t, d, 1
        else:
            m += 1
    c = c + [zero] * max(0, length + 1 - len(c))
    return [-c[i] for i in range(1, length + 1)]


def minimize(spec: LRSSpec) -> LRSSpec | None:
    """Equivalent LRS of minimal order, or None for the zero sequence."""
    s = spec.order
    vals = terms(spec, 2 * s)
    rec = minimal_recurrence(vals)
    if not rec:
        return None
    return LRSSpec(tuple(rec), tuple(vals[: len(rec)]), spec.ring)


def chebyshev_spec() -> LRSSpec:
    """``T_n(x) = 2x T_{n-1}(x) - T_{n-2}(x)`` over Z[x], seeded so that
    ``term(spec, n) = T_n`` (u_1 = T_1 = x, u_2 = T_2 = 2x^2 - 1)."""
    x = CommPoly.var(1, 1)
    one = CommPoly.constant(1, 1)
    return LRSSpec.intpoly(1, [2 * x, -one], [x, 2 * x * x - one])
