"""Exact square matrices, characteristic polynomials and moment functionals.

:class:`Matrix` is generic over its entry ring: Fractions for rational
instances, :class:`~momentpos.exactnum.Gaussian` for unitary ones, plain ints
for gadget and evaluation work, and commutative polynomials for the
polynomial-ring embedding. Only ring operations are used on entries.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .exactnum import Gaussian, IntPoly, format_rational, lcm_denominators, parse_rational


class DimensionError(ValueError):
    pass


def _zero_one(sample):
    one = sample ** 0
    return one - one, one


class Matrix:
    """Immutable square (or rectangular) matrix with exact entries."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise DimensionError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionError("ragged rows")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # construction -----------------------------------------------------------

    @classmethod
    def rational(cls, rows) -> "Matrix":
        return cls([[parse_rational(x) for x in r] for r in rows])

    @classmethod
    def gaussian(cls, rows) -> "Matrix":
        return cls([[x if isinstance(x, Gaussian) else Gaussian.from_json(x) for x in r] for r in rows])

    @classmethod
    def integer(cls, rows) -> "Matrix":
        return cls([[int(x) for x in r] for r in rows])

    @classmethod
    def identity(cls, n: int, one=Fraction(1)) -> "Matrix":
        zero = one - one
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int | None = None, zero=Fraction(0)) -> "Matrix":
        return cls([[zero] * (n if m is None else m) for _ in range(n)])

    @classmethod
    def diag(cls, values, zero=None) -> "Matrix":
        values = list(values)
        if zero is None:
            zero, _ = _zero_one(values[0])
        n = len(values)
        return cls([[values[i] if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, n: int, i: int, j: int, one=1) -> "Matrix":
        """E_ij of size n, 1-based indices."""
        zero = one - one
        return cls([[one if (r, c) == (i - 1, j - 1) else zero for c in range(n)] for r in range(n)])

    @classmethod
    def block(cls, blocks: Sequence[Sequence["Matrix"]]) -> "Matrix":
        rows = []
        for brow in blocks:
            for k in range(brow[0].nrows):
                row = []
                for b in brow:
                    row.extend(b.rows[k])
                rows.append(row)
        return cls(rows)

    # shape ------------------------------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def size(self) -> int:
        if self.nrows != self.ncols:
            raise DimensionError("matrix is not square")
        return self.nrows

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        for r in self.rows:
            yield from r

    # arithmetic -------------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionError("shape mismatch in addition")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionError("shape mismatch in subtraction")
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionError("shape mismatch in product")
            cols = list(zip(*other.rows))
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = r[0] * c[0]
                    for a, b in zip(r[1:], c[1:]):
                        acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return Matrix(out)
        return Matrix([[a * other for a in r] for r in self.rows])

    def __rmul__(self, scalar):
        return Matrix([[scalar * a for a in r] for r in self.rows])

    def __pow__(self, n: int) -> "Matrix":
        if n < 0:
            raise ValueError("negative matrix power")
        s = self.size
        zero, one = _zero_one(self.rows[0][0])
        result = Matrix.identity(s, one)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Matrix({[[str(x) for x in r] for r in self.rows]})"

    def map(self, f: Callable) -> "Matrix":
        return Matrix([[f(a) for a in r] for r in self.rows])

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.rows)))

    T = property(transpose)

    def conjugate_transpose(self) -> "Matrix":
        return Matrix([[a.conjugate() for a in r] for r in zip(*self.rows)])

    def trace(self):
        s = self.size
        acc = self.rows[0][0]
        for i in range(1, s):
            acc = acc + self.rows[i][i]
        return acc

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product, row-major: entry ((i-1)m+k, (j-1)m+l) = a_ij b_kl."""
        rows = []
        for ra in self.rows:
            for rb in other.rows:
                rows.append([a * b for a in ra for b in rb])
        return Matrix(rows)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries())

    def is_identity(self) -> bool:
        return all((x == 1) if i == j else (x == 0)
                   for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def is_orthogonal(self) -> bool:
        return self.is_square() and (self.transpose() * self).is_identity()

    def is_unitary(self) -> bool:
        return self.is_square() and (self.conjugate_transpose() * self).is_identity()

    def apply(self, v: Sequence) -> list:
        return [sum((a * b for a, b in zip(r[1:], v[1:])), r[0] * v[0]) for r in self.rows]

    # rational helpers -------------------------------------------------------

    def common_denominator(self) -> int:
        return lcm_denominators(Fraction(x) for x in self.entries())

    def scaled_integer(self) -> tuple["Matrix", int]:
        """``(c*A, c)`` with c the least common denominator of the entries."""
        c = self.common_denominator()
        return Matrix([[int(Fraction(x) * c) for x in r] for r in self.rows]), c

    def determinant(self):
        """Fraction-free Bareiss elimination over the entry ring's fractions."""
        n = self.size
        a = [[Fraction(x) for x in r] for r in self.rows]
        det = Fraction(1)
        for k in range(n):
            piv = next((i for i in range(k, n) if a[i][k] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                det = -det
            det *= a[k][k]
            for i in range(k + 1, n):
                f = a[i][k] / a[k][k]
                if f:
                    for j in range(k, n):
                        a[i][j] -= f * a[k][j]
        return det

    # serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        return {"size": self.nrows, "rows": [[encode_entry(x) for x in r] for r in self.rows]}

    @staticmethod
    def from_json(obj) -> "Matrix":
        if not isinstance(obj, dict) or "rows" not in obj:
            raise ValueError("matrix JSON needs a 'rows' field")
        rows = obj["rows"]
        gaussian = any(isinstance(x, dict) for r in rows for x in r)
        m = Matrix.gaussian(rows) if gaussian else Matrix.rational(rows)
        if "size" in obj and (obj["size"] != m.nrows or not m.is_square()):
            raise DimensionError("declared size does not match rows")
        return m


RatMatrix = Matrix


def encode_entry(x):
    if isinstance(x, (int, Fraction)):
        return format_rational(x)
    if hasattr(x, "to_json"):
        return x.to_json()
    raise TypeError(f"cannot encode matrix entry {x!r}")


# ---------------------------------------------------------------------------
# characteristic polynomial
# ---------------------------------------------------------------------------

def _faddeev_leverrier(b: Matrix) -> list[int]:
    s = b.size
    coeffs = [0] * (s + 1)
    coeffs[s] = 1
    ident = Matrix.identity(s, 1)
    m = Matrix.zeros(s, zero=0)
    for k in range(1, s + 1):
        m = b * m + ident * coeffs[s - k + 1]
        t = (b * m).trace()
        if t % k:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        coeffs[s - k] = -t // k
    return coeffs


def char_poly(a: Matrix) -> tuple[IntPoly, int]:
    """Characteristic polynomial det(xI - cA) of the integer matrix cA, where
    c is the least common denominator of A, together with c."""
    b, c = a.scaled_integer()
    return IntPoly(_faddeev_leverrier(b)), c


def char_poly_rational(a: Matrix) -> list[Fraction]:
    """Coefficients of det(xI - A), low degree first."""
    p, c = char_poly(a)
    s = p.degree
    return [Fraction(coef, c ** (s - i)) for i, coef in enumerate(p.coeffs)]


def recurrence_coefficients(a: Matrix) -> list[Fraction]:
    """``(a_1..a_s)`` with ``A^s = a_1 A^{s-1} + ... + a_s I``."""
    cp = char_poly_rational(a)
    s = len(cp) - 1
    return [-cp[s - i] for i in range(1, s + 1)]


def verify_cayley_hamilton(a: Matrix) -> bool:
    cp = char_poly_rational(a)
    s = a.size
    acc = Matrix.identity(s) * cp[-1]
    for coef in reversed(cp[:-1]):
        acc = acc * a + Matrix.identity(s) * coef
    return acc.is_zero()


# ---------------------------------------------------------------------------
# moment functionals
# ---------------------------------------------------------------------------

TRACE, TRACE_FORM, BILINEAR = "trace", "trace_form", "bilinear"


@dataclass(frozen=True)
class LinearFunctional:
    """phi(X) = tr(X), tr(X M) or v^t X w."""

    kind: str = TRACE
    M: Matrix | None = None
    v: tuple | None = None
    w: tuple | None = None

    @staticmethod
    def trace() -> "LinearFunctional":
        return LinearFunctional(TRACE)

    @staticmethod
    def trace_form(m: Matrix) -> "LinearFunctional":
        return LinearFunctional(TRACE_FORM, M=m)

    @staticmethod
    def bilinear(v, w) -> "LinearFunctional":
        def coerce(x):
            return parse_rational(x) if isinstance(x, (str, int)) else x
        return LinearFunctional(BILINEAR, v=tuple(coerce(x) for x in v), w=tuple(coerce(x) for x in w))

    def check(self, size: int) -> None:
        if self.kind == TRACE:
            return
        if self.kind == TRACE_FORM:
            if self.M is None or self.M.nrows != size or self.M.ncols != size:
                raise DimensionError("trace form matrix does not match the instance size")
            return
        if self.kind == BILINEAR:
            if self.v is None or self.w is None or len(self.v) != size or len(self.w) != size:
                raise DimensionError("bilinear vectors do not match the instance size")
            return
        raise ValueError(f"unknown functional kind {self.kind!r}")

    def __call__(self, x: Matrix):
        self.check(x.size)
        if self.kind == TRACE:
            return x.trace()
        if self.kind == TRACE_FORM:
            return (x * self.M).trace()
        xw = x.apply(self.w)
        acc = self.v[0] * xw[0]
        for a, b in zip(self.v[1:], xw[1:]):
            acc = acc + a * b
        return acc

    def to_json(self) -> dict:
        if self.kind == TRACE:
            return {"kind": TRACE}
        if self.kind == TRACE_FORM:
            return {"kind": TRACE_FORM, "M": self.M.to_json()}
        return {"kind": BILINEAR, "v": [encode_entry(x) for x in self.v],
                "w": [encode_entry(x) for x in self.w]}

    @staticmethod
    def from_json(obj) -> "LinearFunctional":
        if obj is None:
            return LinearFunctional.trace()
        kind = obj.get("kind")
        if kind == TRACE:
            return LinearFunctional.trace()
        if kind == TRACE_FORM:
            return LinearFunctional.trace_form(Matrix.from_json(obj["M"]))
        if kind == BILINEAR:
            def dec(x):
                return Gaussian.from_json(x) if isinstance(x, dict) else parse_rational(x)
            return LinearFunctional.bilinear([dec(x) for x in obj["v"]], [dec(x) for x in obj["w"]])
        raise ValueError(f"unknown functional kind {kind!r}")


def moment(a: Matrix, phi: LinearFunctional | None = None, n: int = 0):
    """Exact phi(A^n); A^n by repeated squaring."""
    if n < 0:
        raise ValueError("moment index must be nonnegative")
    phi = phi or LinearFunctional.trace()
    phi.check(a.size)
    return phi(a ** n)


def moments(a: Matrix, phi: LinearFunctional | None = None, count: int = 1) -> list[Fraction]:
    """phi(A^n) for n = 0..count-1, using the Cayley-Hamilton recurrence past
    the first s powers."""
    phi = phi or LinearFunctional.trace()
    out = []
    for n, value in iter_moments(a, phi):
        if n >= count:
            break
        out.append(value)
    return out


def iter_moments(a: Matrix, phi: LinearFunctional | None = None):
    """Yield ``(n, phi(A^n))`` for n = 0, 1, 2, ... indefinitely (rational A)."""
    phi = phi or LinearFunctional.trace()
    phi.check(a.size)
    s = a.size
    coeffs = recurrence_coefficients(a)
    window = []
    power = Matrix.identity(s)
    for n in range(s):
        value = phi(power)
        window.append(value)
        yield n, value
        power = power * a
    n = s
    while True:
        value = sum((c * u for c, u in zip(coeffs, reversed(window))), Fraction(0))
        window.pop(0)
        window.append(value)
        yield n, value
        n += 1


def iter_scaled_trace_moments(a: Matrix):
    """Yield ``(n, tr((cA)^n))`` as exact integers; ``tr(A^n)`` has the same
    sign and equals the yielded value divided by c**n."""
    p, c = char_poly(a)
    s = p.degree
    b, _ = a.scaled_integer()
    # Newton's identities give the power sums directly from the coefficients
    e = [p.coeffs[s - k] for k in range(s + 1)]  # e[k] = coefficient of x^{s-k}
    sums = [s]
    yield 0, s
    for n in range(1, s + 1):
        acc = -n * e[n]
        for i in range(1, n):
            acc -= e[i] * sums[n - i]
        sums.append(acc)
        yield n, acc
    window = deque(sums[1:], maxlen=s)  # p_{n-s} .. p_{n-1}
    n = s + 1
    while True:
        acc = 0
        for i, prev in enumerate(reversed(window), start=1):
            acc -= e[i] * prev
        window.append(acc)
        yield n, acc
        n += 1
