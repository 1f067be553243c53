"""Gadgets that embed matrix mortality into moment positivity.

Kronecker products are row-major: entry ((i-1)s+k, (j-1)s+l) of X (x) Y is
x_ij y_kl. Everything here is exact integer (or integer polynomial)
arithmetic; the constructions are checked for any sizes and make no claim
about the thresholds at which mortality becomes undecidable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .commpoly import CommPoly
from .matrix import DimensionError, Matrix


@dataclass(frozen=True)
class MortalityInstance:
    """Integer matrices A_1..A_d of a common size s."""

    matrices: tuple

    def __post_init__(self):
        mats = tuple(m.map(int) for m in self.matrices)
        if not mats:
            raise ValueError("need at least one matrix")
        if len({m.size for m in mats}) != 1:
            raise DimensionError("mortality matrices must share one size")
        object.__setattr__(self, "matrices", mats)

    @property
    def d(self) -> int:
        return len(self.matrices)

    @property
    def s(self) -> int:
        return self.matrices[0].size

    def to_json(self) -> dict:
        return {"matrices": [[[str(x) for x in r] for r in m.rows] for m in self.matrices]}

    @staticmethod
    def from_json(obj) -> "MortalityInstance":
        mats = obj["matrices"] if isinstance(obj, dict) else obj
        return MortalityInstance(tuple(Matrix.integer(m["rows"] if isinstance(m, dict) else m) for m in mats))


def _corner(top: Matrix, a) -> Matrix:
    """``[[top, 0], [0, a]]``."""
    n = top.size
    rows = [list(r) + [0] for r in top.rows]
    rows.append([0] * n + [a])
    return Matrix(rows)


def build_gadget_N(s: int) -> Matrix:
    """``[[sum_ij E_ij (x) E_ij, 0], [0, 1]]`` of size s^2+1: ones at
    ((i-1)s+i, (j-1)s+j) and in the corner."""
    if s < 1:
        raise ValueError("s must be at least 1")
    n = s * s
    rows = [[0] * n for _ in range(n)]
    for i in range(s):
        for j in range(s):
            rows[i * s + i][j * s + j] = 1
    return _corner(Matrix(rows), 1)


def trace_gadget_check(x: Matrix, a: int) -> int:
    """``tr(Y N)`` for ``Y = [[X (x) X, 0], [0, a]]``, by block assembly."""
    x = x.map(int)
    y = _corner(x.kron(x), int(a))
    return (y * build_gadget_N(x.size)).trace()


def lift_mortality(inst: MortalityInstance) -> list[Matrix]:
    """``B_i = [[A_i (x) A_i, 0], [0, 1]]`` for i <= d and
    ``B_{d+1} = [[I (x) I, 0], [0, -1]]``."""
    out = [_corner(a.kron(a), 1) for a in inst.matrices]
    eye = Matrix.identity(inst.s * inst.s, 1)
    out.append(_corner(eye, -1))
    return out


def ordered_product(mats: Sequence[Matrix], exps: Sequence[int]) -> Matrix:
    """``M_1^{n_1} ... M_k^{n_k}``."""
    if len(mats) != len(exps):
        raise ValueError("one exponent per matrix")
    acc = Matrix.identity(mats[0].size, 1)
    for m, e in zip(mats, exps):
        if e:
            acc = acc * (m ** e)
    return acc


def lifted_trace(inst: MortalityInstance, exps: Sequence[int]) -> int:
    """``tr(B_1^{n_1} ... B_{d+1}^{n_{d+1}} N)`` with d+1 exponents."""
    if len(exps) != inst.d + 1:
        raise ValueError("need d+1 exponents")
    prod = ordered_product(lift_mortality(inst), exps)
    return (prod * build_gadget_N(inst.s)).trace()


def mortality_search(inst: MortalityInstance, bound: int):
    """First exponent tuple with ``A_1^{n_1} ... A_d^{n_d} = 0`` and every
    ``0 <= n_i <= bound``, or None. Tuples are visited by increasing total,
    and within one total in decreasing lexicographic order."""
    d = inst.d
    tuples = sorted(itertools.product(range(bound + 1), repeat=d), key=lambda t: (sum(t), [-x for x in t]))
    for exps in tuples:
        if ordered_product(inst.matrices, exps).is_zero():
            return exps
    return None


def commpoly_embed(inst: MortalityInstance, n_matrix: Matrix) -> tuple[Matrix, Matrix]:
    """``A = sum_i (sum_{j<=i} e_j e_i^t) (x) A_i x_i`` over Z[x_1..x_d] and
    ``M = m m^t (x) N`` with m the all-ones vector, both of size d*s."""
    d, s = inst.d, inst.s
    n_matrix = n_matrix.map(int)
    if n_matrix.size != s:
        raise DimensionError("N must have the size of the instance matrices")
    zero = CommPoly.constant(d, 0)
    rows = [[zero] * (d * s) for _ in range(d * s)]
    for i in range(d):
        xi = CommPoly.var(d, i + 1)
        a = inst.matrices[i]
        for j in range(i + 1):
            for r in range(s):
                for c in range(s):
                    if a[r, c]:
                        rows[j * s + r][i * s + c] = xi * a[r, c]
    big_m = Matrix([[n_matrix[r % s, c % s] for c in range(d * s)] for r in range(d * s)])
    return Matrix(rows), big_m


def _compositions(n: int, parts: int):
    if parts == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def comm_moment_identity(inst: MortalityInstance, n_matrix: Matrix, n: int) -> tuple[CommPoly, dict]:
    """``tr(A^n M)`` computed two ways: by powering the polynomial matrix,
    and as ``sum c * tr(A_1^{n_1} ... A_d^{n_d} N) x^(n_1..n_d)`` over the
    compositions of n, with c the least i such that n_i > 0."""
    if n < 1:
        raise ValueError("n must be at least 1")
    a, big_m = commpoly_embed(inst, n_matrix)
    lhs = ((a ** n) * big_m.map(lambda v: CommPoly.constant(inst.d, v))).trace()
    n_int = n_matrix.map(int)
    rhs = CommPoly.constant(inst.d, 0)
    coeffs = []
    for exps in _compositions(n, inst.d):
        c = next(i for i, e in enumerate(exps, start=1) if e)
        t = (ordered_product(inst.matrices, exps) * n_int).trace()
        coeffs.append({"exps": list(exps), "c": c, "trace": str(t)})
        if t:
            rhs = rhs + CommPoly(inst.d, {exps: c * t})
    report = {"equal": lhs == rhs, "lhs": lhs.to_json(), "rhs": rhs.to_json(), "terms": coeffs}
    return lhs, report
