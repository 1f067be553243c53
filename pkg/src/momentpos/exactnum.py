"""Exact scalars: rationals, Gaussian rationals, integer polynomials and real
algebraic numbers.

Rationals are :class:`fractions.Fraction`. Integer polynomials store their
coefficients low degree first. Real roots are isolated with Sturm sequences
and represented as :class:`AlgebraicReal` (squarefree defining polynomial plus
an isolating interval), so comparisons are decided exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Rational = Fraction

LT, EQ, GT = -1, 0, 1


# ---------------------------------------------------------------------------
# rationals
# ---------------------------------------------------------------------------

def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text.strip())
    raise TypeError(f"cannot read a rational from {text!r}")


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def lcm_denominators(values: Iterable[Fraction]) -> int:
    c = 1
    for v in values:
        c = math.lcm(c, Fraction(v).denominator)
    return c


def sqrt_bounds(x: Fraction, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Rational ``lo <= sqrt(x) <= hi`` with ``hi - lo <= 2**-bits``."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("square root of a negative number")
    scale = 1 << bits
    s = math.isqrt(x.numerator * scale * scale // x.denominator)
    lo = Fraction(s, scale)
    hi = lo if lo * lo == x else Fraction(s + 1, scale)
    return lo, hi


def sqrt_upper(x: Fraction, bits: int = 64) -> Fraction:
    return sqrt_bounds(x, bits)[1]


def sqrt_lower(x: Fraction, bits: int = 64) -> Fraction:
    return sqrt_bounds(x, bits)[0]


class Gaussian:
    """Element of Q[i] with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", parse_rational(re))
        object.__setattr__(self, "im", parse_rational(im))

    def __setattr__(self, name, value):
        raise AttributeError("Gaussian is immutable")

    @staticmethod
    def coerce(x) -> "Gaussian":
        if isinstance(x, Gaussian):
            return x
        return Gaussian(parse_rational(x), 0)

    def __add__(self, other):
        try:
            o = Gaussian.coerce(other)
        except TypeError:
            return NotImplemented
        return Gaussian(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = Gaussian.coerce(other)
        except TypeError:
            return NotImplemented
        return Gaussian(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return Gaussian.coerce(other) - self

    def __mul__(self, other):
        try:
            o = Gaussian.coerce(other)
        except TypeError:
            return NotImplemented
        return Gaussian(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __truediv__(self, other):
        o = Gaussian.coerce(other)
        d = o.norm()
        if d == 0:
            raise ZeroDivisionError("division by zero in Q[i]")
        num = self * o.conjugate()
        return Gaussian(num.re / d, num.im / d)

    def __pow__(self, n: int):
        if n < 0:
            return Gaussian(1) / (self ** (-n))
        result, base = Gaussian(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "Gaussian":
        return Gaussian(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __eq__(self, other):
        try:
            o = Gaussian.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"Gaussian({format_rational(self.re)}, {format_rational(self.im)})"

    def __str__(self):
        if self.im == 0:
            return format_rational(self.re)
        mag = abs(self.im)
        imag = "i" if mag == 1 else (f"{mag}i" if mag.denominator == 1 else f"{format_rational(mag)}*i")
        if self.re == 0:
            return imag if self.im > 0 else "-" + imag
        sign = "+" if self.im > 0 else "-"
        return f"{format_rational(self.re)}{sign}{imag}"

    def to_json(self):
        return {"re": format_rational(self.re), "im": format_rational(self.im)}

    @staticmethod
    def from_json(obj) -> "Gaussian":
        if isinstance(obj, dict):
            return Gaussian(parse_rational(obj.get("re", 0)), parse_rational(obj.get("im", 0)))
        return Gaussian(parse_rational(obj), 0)


# ---------------------------------------------------------------------------
# integer polynomials
# ---------------------------------------------------------------------------

def _strip(coeffs: Sequence) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPoly:
    """Univariate polynomial with integer coefficients, low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = []
        for c in coeffs:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"non-integer coefficient {c}")
                c = c.numerator
            cs.append(int(c))
        object.__setattr__(self, "coeffs", _strip(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @staticmethod
    def x() -> "IntPoly":
        return IntPoly([0, 1])

    @staticmethod
    def constant(c: int) -> "IntPoly":
        return IntPoly([c])

    @staticmethod
    def from_roots(roots: Iterable[int]) -> "IntPoly":
        p = IntPoly([1])
        for r in roots:
            p = p * IntPoly([-r, 1])
        return p

    @staticmethod
    def from_rationals(coeffs: Sequence[Fraction]) -> tuple["IntPoly", int]:
        """Clear denominators: returns ``(p, d)`` with ``p = d * coeffs``."""
        d = lcm_denominators(coeffs)
        return IntPoly([Fraction(c) * d for c in coeffs]), d

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x) -> int:
        v = self(x)
        return (v > 0) - (v < 0)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly([other])
        if not isinstance(other, IntPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPoly([other])
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return IntPoly([other]) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        if not isinstance(other, IntPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result, base = IntPoly([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly([other])
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if a == 1 else f"{a}{mono}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def derivative(self) -> "IntPoly":
        return IntPoly(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def primitive(self) -> "IntPoly":
        """Primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lc < 0:
            g = -g
        return IntPoly(c // g for c in self.coeffs)

    def monic_rational(self) -> list[Fraction]:
        lc = self.lc
        return [Fraction(c, lc) for c in self.coeffs]

    def scale_variable(self, c) -> "IntPoly":
        """``p(c*x)`` for integer c, or the integer polynomial proportional to
        ``p(x/d)`` when ``c = 1/d``."""
        c = Fraction(c)
        if c.denominator == 1:
            k = c.numerator
            return IntPoly(a * k**i for i, a in enumerate(self.coeffs))
        n, d = c.numerator, c.denominator
        deg = self.degree
        return IntPoly(a * n**i * d ** (deg - i) for i, a in enumerate(self.coeffs))

    def reflect(self) -> "IntPoly":
        """``p(-x)``."""
        return IntPoly(a if i % 2 == 0 else -a for i, a in enumerate(self.coeffs))

    def compose_square(self) -> "IntPoly":
        """``p(x**2)``."""
        out = [0] * (2 * len(self.coeffs) - 1 if self.coeffs else 0)
        for i, a in enumerate(self.coeffs):
            out[2 * i] = a
        return IntPoly(out)

    def shift_power(self, k: int) -> "IntPoly":
        """``x**k * p(x)``."""
        if not self.coeffs:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @staticmethod
    def from_json(obj) -> "IntPoly":
        return IntPoly(int(c) for c in obj)


def _qpoly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = list(a)
    b = list(_strip(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], list(_strip(a))
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lb = Fraction(b[-1])
    for k in range(len(a) - len(b), -1, -1):
        coef = Fraction(a[k + len(b) - 1]) / lb
        q[k] = coef
        if coef:
            for j, bj in enumerate(b):
                a[k + j] -= coef * bj
    return list(_strip(q)), list(_strip(a[: len(b) - 1]))


def poly_divmod(a: IntPoly, b: IntPoly) -> tuple[list[Fraction], list[Fraction]]:
    """Quotient and remainder over Q (coefficient lists, low degree first)."""
    return _qpoly_divmod([Fraction(c) for c in a.coeffs], [Fraction(c) for c in b.coeffs])


def exact_quotient(a: IntPoly, b: IntPoly) -> IntPoly:
    q, r = poly_divmod(a, b)
    if r:
        raise ValueError(f"{b} does not divide {a}")
    return IntPoly(q)


def divides(b: IntPoly, a: IntPoly) -> bool:
    return not poly_divmod(a, b)[1]


def pseudo_remainder(a: IntPoly, b: IntPoly) -> IntPoly:
    """Remainder of ``|lc(b)|**(deg a - deg b + 1) * a`` by ``b``; the positive
    multiplier keeps signs, which Sturm sequences depend on."""
    if b.is_zero():
        raise ZeroDivisionError("pseudo-remainder by zero")
    if a.degree < b.degree:
        return a
    lb = b.lc
    mult = abs(lb)
    r = list(a.coeffs)
    db = b.degree
    for k in range(a.degree - db, -1, -1):
        top = r[k + db]
        r = [c * mult for c in r]
        if top:
            # subtract (top * mult / lb) * x^k * b; mult/lb = sign(lb)
            f = top if lb > 0 else -top
            for j, bj in enumerate(b.coeffs):
                r[k + j] -= f * bj
        r.pop()
    return IntPoly(r)


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient (primitive PRS)."""
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = pseudo_remainder(a, b)
        a, b = b, (r.primitive() if not r.is_zero() else r)
    return a.primitive()


def squarefree_decomposition(p: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm: ``p = c * prod f_k**k`` with squarefree, pairwise
    coprime, primitive ``f_k``. Constant factors are omitted."""
    if p.is_zero():
        raise ValueError("zero polynomial has no squarefree decomposition")
    p = p.primitive()
    if p.degree == 0:
        return []
    out = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = exact_quotient(p, a)
    c = exact_quotient(dp, a) if not dp.is_zero() else IntPoly()
    d = c - b.derivative()
    k = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, k))
        b2 = exact_quotient(b, g)
        c = exact_quotient(d, g)
        b = b2
        d = c - b.derivative()
        k += 1
    return [(f.primitive(), k) for f, k in out]


def squarefree_part(p: IntPoly) -> IntPoly:
    part = IntPoly([1])
    for f, _ in squarefree_decomposition(p):
        part = part * f
    return part.primitive()


# ---------------------------------------------------------------------------
# Sturm sequences and real roots
# ---------------------------------------------------------------------------

def sturm_sequence(p: IntPoly) -> list[IntPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = pseudo_remainder(seq[-2], seq[-1])
        if r.is_zero():
            break
        g = r.content()
        seq.append(IntPoly(-c // g for c in r.coeffs))
    return [q for q in seq if not q.is_zero()]


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def sign_variations(seq: Sequence[IntPoly], x) -> int:
    signs = [s for s in (_sign(q(x)) for q in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def count_roots(seq: Sequence[IntPoly], lo, hi) -> int:
    """Distinct roots in the half-open interval (lo, hi]; exact for squarefree
    leading polynomial, and for arbitrary lo < hi."""
    return sign_variations(seq, lo) - sign_variations(seq, hi)


def root_bound(p: IntPoly) -> int:
    """Integer B with every complex root of p strictly inside |z| < B."""
    lc = abs(p.lc)
    m = max((abs(c) for c in p.coeffs[:-1]), default=0)
    return 1 + -(-m // lc) + 1


@dataclass(frozen=True)
class AlgebraicReal:
    """A real root of the squarefree integer polynomial ``defining`` lying in
    ``[lo, hi]``. Endpoints are not roots unless ``lo == hi``."""

    defining: IntPoly
    lo: Fraction
    hi: Fraction

    @staticmethod
    def rational(q) -> "AlgebraicReal":
        q = Fraction(q)
        return AlgebraicReal(IntPoly([-q.numerator, q.denominator]), q, q)

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return self.lo, self.hi

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def bisect(self) -> "AlgebraicReal":
        if self.is_point:
            return self
        p = self.defining
        mid = (self.lo + self.hi) / 2
        sm = p.sign_at(mid)
        if sm == 0:
            return AlgebraicReal(p, mid, mid)
        if p.sign_at(self.lo) * sm < 0:
            return AlgebraicReal(p, self.lo, mid)
        return AlgebraicReal(p, mid, self.hi)

    def refine(self, width) -> "AlgebraicReal":
        a = self
        width = Fraction(width)
        while a.width > width:
            a = a.bisect()
        return a

    def sign(self) -> int:
        a = self
        while True:
            if a.lo > 0:
                return 1
            if a.hi < 0:
                return -1
            if a.is_point:
                return _sign(a.lo)
            if a.defining(0) == 0 and a.lo <= 0 <= a.hi:
                return 0
            a = a.bisect()

    def __neg__(self) -> "AlgebraicReal":
        return AlgebraicReal(self.defining.reflect().primitive(), -self.hi, -self.lo)

    def abs(self) -> "AlgebraicReal":
        return -self if self.sign() < 0 else self

    def scale(self, c) -> "AlgebraicReal":
        """The number ``c * self`` for positive rational c."""
        c = Fraction(c)
        if c <= 0:
            raise ValueError("scale factor must be positive")
        return AlgebraicReal(self.defining.scale_variable(1 / c).primitive(), self.lo * c, self.hi * c)

    def to_float(self) -> float:
        a = self.refine(Fraction(1, 1 << 60) * max(1, abs(self.lo)))
        return float((a.lo + a.hi) / 2)

    def decimal(self, digits: int = 20) -> str:
        a = self.refine(Fraction(1, 10 ** (digits + 2)))
        mid = (a.lo + a.hi) / 2
        import mpmath

        with mpmath.workdps(digits + 5):
            return mpmath.nstr(mpmath.mpf(mid.numerator) / mid.denominator, digits)

    def compare_rational(self, q) -> int:
        q = Fraction(q)
        a = self
        while True:
            if a.is_point:
                return _sign(a.lo - q)
            if q <= a.lo:
                return GT
            if q >= a.hi:
                return LT
            if a.defining(q) == 0:
                return EQ
            a = a.bisect()

    def to_json(self) -> dict:
        return {
            "poly": self.defining.to_json(),
            "interval": [format_rational(self.lo), format_rational(self.hi)],
            "display_only": self.decimal(16),
        }

    @staticmethod
    def from_json(obj) -> "AlgebraicReal":
        lo, hi = obj["interval"]
        return AlgebraicReal(IntPoly.from_json(obj["poly"]), parse_rational(lo), parse_rational(hi))


@dataclass(frozen=True)
class RealRoot:
    value: AlgebraicReal
    multiplicity: int


def _closed_isolation(f: IntPoly, seq, lo: Fraction, hi: Fraction) -> AlgebraicReal:
    """The single root in (lo, hi] as an interval whose endpoints are not
    roots (or a point)."""
    while True:
        if f(hi) == 0:
            return AlgebraicReal(f, hi, hi)
        if f(lo) != 0:
            return AlgebraicReal(f, lo, hi)
        # lo is a neighbouring root: move it inward
        mid = (lo + hi) / 2
        if count_roots(seq, mid, hi) == 1:
            lo = mid
        else:
            hi = mid


def _isolate_squarefree(f: IntPoly) -> list[AlgebraicReal]:
    seq = sturm_sequence(f)
    bound = Fraction(root_bound(f))
    out: list[AlgebraicReal] = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots(seq, lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append(_closed_isolation(f, seq, lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return out


def _disjoint(a: AlgebraicReal, b: AlgebraicReal) -> bool:
    return a.hi < b.lo or b.hi < a.lo


def isolate_real_roots(p: IntPoly) -> list[RealRoot]:
    """Distinct real roots of p with multiplicities, ascending, with pairwise
    disjoint isolating intervals."""
    if p.is_zero():
        raise ValueError("zero polynomial has no root set")
    roots: list[RealRoot] = []
    for f, k in squarefree_decomposition(p):
        roots.extend(RealRoot(a, k) for a in _isolate_squarefree(f))
    # roots of different squarefree factors are distinct; separate intervals
    changed = True
    while changed:
        changed = False
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                a, b = roots[i].value, roots[j].value
                if not _disjoint(a, b):
                    if a.width >= b.width:
                        roots[i] = RealRoot(a.bisect(), roots[i].multiplicity)
                    else:
                        roots[j] = RealRoot(b.bisect(), roots[j].multiplicity)
                    changed = True
    roots.sort(key=lambda r: r.value.lo)
    return roots


def compare_algebraic(a: AlgebraicReal, b: AlgebraicReal) -> int:
    """Exact ordering: LT (-1), EQ (0) or GT (1)."""
    if a.is_point and b.is_point:
        return _sign(a.lo - b.lo)
    if a.is_point:
        return -b.compare_rational(a.lo)
    if b.is_point:
        return a.compare_rational(b.lo)
    g = None
    while True:
        if a.hi <= b.lo:
            return LT
        if b.hi <= a.lo:
            return GT
        if g is None:
            g = poly_gcd(a.defining, b.defining)
        if g.degree > 0:
            lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
            if g(lo) == 0 or count_roots(sturm_sequence(g), lo, hi) > 0:
                return EQ
        a, b = a.bisect(), b.bisect()
        if a.is_point or b.is_point:
            return compare_algebraic(a, b)


# ---------------------------------------------------------------------------
# cyclotomic polynomials and resultants
# ---------------------------------------------------------------------------

def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def inverse_totient(k: int) -> list[int]:
    """All n with totient(n) == k (uses totient(n) >= sqrt(n/2))."""
    return [n for n in range(1, 2 * k * k + 3) if totient(n) == k]


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPoly:
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    p = IntPoly([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            p = exact_quotient(p, cyclotomic(d))
    return p


def _is_irreducible(p: IntPoly) -> bool:
    import sympy

    x = sympy.Symbol("x")
    return sympy.Poly(list(reversed(p.coeffs)), x, domain="ZZ").is_irreducible


def cyclotomic_order(p: IntPoly) -> int | None:
    """n if p is (up to sign and content) the n-th cyclotomic polynomial."""
    if p.is_zero() or p.degree < 1:
        raise ValueError("requires irreducible polynomial")
    q = p.primitive()
    if abs(q.lc) == 1:
        for n in inverse_totient(q.degree):
            if cyclotomic(n) == q:
                return n
    if not _is_irreducible(q):
        raise ValueError("requires irreducible polynomial")
    return None


def cyclotomic_factorization(p: IntPoly) -> tuple[list[int], IntPoly]:
    """Split off cyclotomic factors of a squarefree p: returns the indices n
    with Phi_n | p and the cofactor."""
    q = p.primitive()
    found = []
    limit = 2 * q.degree * q.degree + 2
    for n in range(1, limit + 1):
        if q.degree == 0:
            break
        if totient(n) <= q.degree:
            phi = cyclotomic(n)
            if divides(phi, q):
                q = exact_quotient(q, phi).primitive()
                found.append(n)
    return found, q


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def sylvester_matrix(p: IntPoly, q: IntPoly) -> list[list[int]]:
    m, n = p.degree, q.degree
    size = m + n
    rows = []
    hp = list(reversed(p.coeffs))
    hq = list(reversed(q.coeffs))
    for i in range(n):
        rows.append([0] * i + hp + [0] * (size - i - len(hp)))
    for i in range(m):
        rows.append([0] * i + hq + [0] * (size - i - len(hq)))
    return rows


def resultant(p: IntPoly, q: IntPoly) -> int:
    """Determinant of the Sylvester matrix of (p, q): p's rows first,
    coefficients highest degree first. For monic inputs this is
    ``prod (alpha_i - beta_j)``, e.g. ``res(x - 2, x - 3) = -1``."""
    if p.is_zero() or q.is_zero():
        return 0
    if p.degree == 0 and q.degree == 0:
        return 1
    if p.degree == 0:
        return p.lc ** q.degree
    if q.degree == 0:
        return q.lc ** p.degree
    return _bareiss_det(sylvester_matrix(p, q))
