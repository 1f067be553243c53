"""Multivariate commutative polynomials with integer coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class CommPoly:
    """Element of Z[x_1..x_d]: exponent tuples mapped to nonzero integers."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, int] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple, int] = {}
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} has wrong length for {nvars} variables")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            c = int(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if clean[exps] == 0:
                    del clean[exps]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("CommPoly is immutable")

    @staticmethod
    def constant(nvars: int, c: int) -> "CommPoly":
        return CommPoly(nvars, {(0,) * nvars: c})

    @staticmethod
    def var(nvars: int, i: int, coeff: int = 1) -> "CommPoly":
        """coeff * x_i, 1-based."""
        exps = [0] * nvars
        exps[i - 1] = 1
        return CommPoly(nvars, {tuple(exps): coeff})

    def _coerce(self, other) -> "CommPoly":
        if isinstance(other, CommPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, Fraction):
            if other.denominator != 1:
                raise ValueError("non-integer scalar")
            other = other.numerator
        if isinstance(other, int):
            return CommPoly.constant(self.nvars, other)
        raise TypeError(f"cannot combine CommPoly with {type(other).__name__}")

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return CommPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return CommPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[tuple, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return CommPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = CommPoly.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, exps) -> int:
        return self.terms.get(tuple(exps), 0)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, degree: int) -> bool:
        return all(sum(e) == degree for e in self.terms)

    def all_coefficients_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.terms.values())

    def __call__(self, *point):
        if len(point) != self.nvars:
            raise ValueError("wrong number of evaluation points")
        acc = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                t = t * x ** k
            acc = acc + t
        return acc

    def sorted_terms(self):
        """Graded, then lexicographically descending exponent order."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def __repr__(self):
        return f"CommPoly({self.nvars}, {dict(self.sorted_terms())})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}") for i, k in enumerate(e) if k
            )
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> dict:
        return {
            "vars": self.nvars,
            "terms": [{"exps": list(e), "coeff": str(c)} for e, c in self.sorted_terms()],
        }

    @staticmethod
    def from_json(obj) -> "CommPoly":
        d = int(obj["vars"])
        return CommPoly(d, [(t["exps"], int(t["coeff"])) for t in obj["terms"]])
