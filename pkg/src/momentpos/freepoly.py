"""Non-commutative integer polynomials in the letters z_1..z_d.

A polynomial is a map from words (tuples of letters, 1-based) to nonzero
integers; the empty word is the identity. Evaluation substitutes square
integer matrices for the letters. The free Polya check reads a single
coefficient off the corner entry of an evaluation at 0/1 shift matrices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .matrix import DimensionError, Matrix

Word = tuple


def _word_key(w: Word):
    return (len(w), w)


class NCPoly:
    """Element of Z<z_1..z_d> with no zero coefficients stored."""

    __slots__ = ("letters", "terms")

    def __init__(self, letters: int, terms: Mapping[Word, int] | Iterable = ()):
        if letters < 1:
            raise ValueError("need at least one letter")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Word, int] = {}
        for word, c in items:
            word = tuple(int(k) for k in word)
            if any(k < 1 or k > letters for k in word):
                raise ValueError(f"letter out of range in word {word}")
            c = int(c)
            if c:
                clean[word] = clean.get(word, 0) + c
                if clean[word] == 0:
                    del clean[word]
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("NCPoly is immutable")

    @staticmethod
    def word(letters: int, w: Sequence[int], coeff: int = 1) -> "NCPoly":
        return NCPoly(letters, {tuple(w): coeff})

    @staticmethod
    def one(letters: int) -> "NCPoly":
        return NCPoly(letters, {(): 1})

    @property
    def degree(self) -> int:
        """Longest stored word; -1 for the zero polynomial."""
        return max((len(w) for w in self.terms), default=-1)

    def coefficient(self, w: Sequence[int]) -> int:
        return self.terms.get(tuple(w), 0)

    def sorted_terms(self) -> list[tuple[Word, int]]:
        return sorted(self.terms.items(), key=lambda t: _word_key(t[0]))

    def _check(self, other: "NCPoly"):
        if not isinstance(other, NCPoly):
            raise TypeError("expected NCPoly")
        if other.letters != self.letters:
            raise ValueError("letter count mismatch")

    def __add__(self, other: "NCPoly") -> "NCPoly":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return NCPoly(self.letters, out)

    def __neg__(self) -> "NCPoly":
        return NCPoly(self.letters, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return NCPoly(self.letters, {w: c * other for w, c in self.terms.items()})
        self._check(other)
        out: dict[Word, int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return NCPoly(self.letters, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.letters == other.letters and self.terms == other.terms

    def __hash__(self):
        return hash((self.letters, frozenset(self.terms.items())))

    def __repr__(self):
        return f"NCPoly({self.letters}, {dict(self.sorted_terms())})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            mono = "*".join(f"z{k}" for k in w)
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
        return {"letters": self.letters,
                "terms": [{"word": list(w), "coeff": str(c)} for w, c in self.sorted_terms()]}

    @staticmethod
    def from_json(obj) -> "NCPoly":
        return NCPoly(int(obj["letters"]), [(t["word"], int(t["coeff"])) for t in obj["terms"]])


def _check_tuple(letters: int, matrices: Sequence[Matrix]) -> int:
    if len(matrices) != letters:
        raise DimensionError(f"expected {letters} matrices, got {len(matrices)}")
    sizes = {m.size for m in matrices}
    if len(sizes) != 1:
        raise DimensionError("matrices must share one size")
    return sizes.pop()


def nc_eval(p: NCPoly, matrices: Sequence[Matrix]) -> Matrix:
    """``p(A_1, ..., A_d)`` with the empty word sent to the identity."""
    n = _check_tuple(p.letters, matrices)
    mats = [m.map(int) for m in matrices]
    acc = Matrix.zeros(n, zero=0)
    # share prefixes: words sorted so each product extends a cached one
    cache: dict[Word, Matrix] = {(): Matrix.identity(n, 1)}
    for w, c in p.sorted_terms():
        for k in range(1, len(w) + 1):
            if w[:k] not in cache:
                cache[w[:k]] = cache[w[: k - 1]] * mats[w[k - 1] - 1]
        acc = acc + c * cache[w]
    return acc


def isolation_matrices(word: Sequence[int], letters: int) -> list[Matrix]:
    """0/1 matrices of size len(word)+1 whose evaluation carries the
    coefficient of ``word`` in entry (1, len(word)+1): letter j gets
    ``sum E_{i,i+1}`` over the positions i where the word has letter j."""
    word = tuple(word)
    ell = len(word)
    if ell == 0:
        raise ValueError("coefficient of empty word read from entry (1,1) of evaluation at zero matrices")
    if any(k < 1 or k > letters for k in word):
        raise ValueError("letter out of range")
    out = []
    for j in range(1, letters + 1):
        rows = [[0] * (ell + 1) for _ in range(ell + 1)]
        for i, k in enumerate(word):
            if k == j:
                rows[i][i + 1] = 1
        out.append(Matrix(rows))
    return out


def pad(m: Matrix, size: int) -> Matrix:
    """Zero rows and columns appended up to ``size``."""
    if size < m.size:
        raise DimensionError("padding cannot shrink a matrix")
    rows = [list(r) + [0] * (size - m.size) for r in m.rows]
    rows += [[0] * size for _ in range(size - m.size)]
    return Matrix(rows)


@dataclass(frozen=True)
class AllNonneg:
    poly: NCPoly

    verdict = "all_nonneg"

    def to_json(self) -> dict:
        return {"kind": "polya_all_nonneg", "poly": self.poly.to_json()}


@dataclass(frozen=True)
class Witness:
    poly: NCPoly
    word: Word
    coefficient: int
    matrices: tuple
    entry: tuple

    verdict = "witness"

    def to_json(self) -> dict:
        return {
            "kind": "polya_witness",
            "poly": self.poly.to_json(),
            "word": list(self.word),
            "coeff": str(self.coefficient),
            "matrices": [[[str(x) for x in r] for r in m.rows] for m in self.matrices],
            "entry": list(self.entry),
        }


def polya_check(p: NCPoly, padded: bool = False):
    """AllNonneg when every coefficient is >= 0, else a Witness for the first
    negative word in length-then-lex order. The empty word is witnessed by
    1x1 zero matrices, where p evaluates to its constant term. With
    ``padded`` the matrices are enlarged to size deg(p)+1."""
    negative = [(w, c) for w, c in p.sorted_terms() if c < 0]
    if not negative:
        return AllNonneg(p)
    w, c = negative[0]
    if w:
        mats = isolation_matrices(w, p.letters)
    else:
        mats = [Matrix([[0]]) for _ in range(p.letters)]
    if padded:
        mats = [pad(m, p.degree + 1) for m in mats]
    return Witness(p, w, c, tuple(mats), (1, len(w) + 1))


def pencil_moment(matrices: Sequence[Matrix], n: int) -> NCPoly:
    """``tr((z_1 A_1 + ... + z_d A_d)^n)`` as a polynomial in the letters:
    the coefficient of the word k_1..k_n is ``tr(A_k1 ... A_kn)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    d = len(matrices)
    s = _check_tuple(d, matrices)
    mats = [m.map(int) for m in matrices]
    if n == 0:
        return NCPoly(d, {(): s})
    out = {}
    level = {(): Matrix.identity(s, 1)}
    for _ in range(n):
        level = {w + (k + 1,): prod * mats[k] for w, prod in level.items() for k in range(d)}
    for w, prod in level.items():
        out[w] = prod.trace()
    return NCPoly(d, out)


def all_words(letters: int, length: int):
    return itertools.product(range(1, letters + 1), repeat=length)
