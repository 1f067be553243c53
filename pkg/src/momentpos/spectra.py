"""Spectral classification of rational matrices.

Everything is done on the integer matrix ``cA`` (c the least common
denominator), whose characteristic polynomial is monic with integer
coefficients; eigenvalues of A are those of cA divided by c. Real eigenvalues
come from Sturm isolation, non-real ones from certified root disks. Moduli are
compared exactly: ``|mu|^2`` is identified as a root of an integer polynomial
(the Graeffe square for real mu, the symmetric-square polynomial with roots
``mu_i mu_j`` for non-real mu) and compared with :func:`compare_algebraic`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key, lru_cache

from .disks import RootSet, monomial_reality
from .exactnum import (
    EQ,
    AlgebraicReal,
    IntPoly,
    compare_algebraic,
    count_roots,
    cyclotomic_factorization,
    isolate_real_roots,
    sqrt_bounds,
    squarefree_decomposition,
    squarefree_part,
    sturm_sequence,
    totient,
)
from .matrix import Matrix, char_poly


# ---------------------------------------------------------------------------
# auxiliary polynomials
# ---------------------------------------------------------------------------

def power_sums(f: IntPoly, count: int) -> list[int]:
    """``[p_1, ..., p_count]`` for the roots of the monic integer f."""
    if f.lc != 1:
        raise ValueError("power sums need a monic polynomial")
    m = f.degree
    # f = x^m + c_{m-1} x^{m-1} + ... ; e_k = (-1)^k c_{m-k}
    e = [1] + [(-1) ** k * f.coeffs[m - k] for k in range(1, m + 1)]
    p = []
    for k in range(1, count + 1):
        acc = (-1) ** (k - 1) * k * e[k] if k <= m else 0
        for i in range(1, min(k, m + 1)):
            acc += (-1) ** (i - 1) * e[i] * p[k - i - 1]
        p.append(acc)
    return p


def poly_from_power_sums(degree: int, sums: list[int]) -> IntPoly:
    """Monic polynomial whose roots have the given power sums (Newton)."""
    e = [1]
    for k in range(1, degree + 1):
        acc = 0
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * sums[i - 1]
        if acc % k:
            raise ArithmeticError("power sums are not those of an integer polynomial")
        e.append(acc // k)
    coeffs = [0] * (degree + 1)
    for k in range(degree + 1):
        coeffs[degree - k] = (-1) ** k * e[k]
    return IntPoly(coeffs)


def symmetric_square(f: IntPoly) -> IntPoly:
    """Monic integer polynomial with roots ``mu_i mu_j`` (i <= j) for the roots
    of the monic f; its power sums are ``(p_k^2 + p_{2k}) / 2``."""
    m = f.degree
    big = m * (m + 1) // 2
    p = power_sums(f, 2 * big)
    sums = [(p[k - 1] ** 2 + p[2 * k - 1]) // 2 for k in range(1, big + 1)]
    return poly_from_power_sums(big, sums)


def graeffe(f: IntPoly) -> IntPoly:
    """Polynomial with roots ``mu^2`` for the roots mu of f."""
    h = f * f.reflect()
    return IntPoly(h.coeffs[0::2])


@lru_cache(maxsize=None)
def _positive_roots(g: IntPoly) -> tuple:
    sq = squarefree_part(g)
    return tuple(r.value for r in isolate_real_roots(sq) if r.value.sign() > 0)


def _identify(roots: tuple, enclosure) -> AlgebraicReal:
    """The unique root in ``roots`` meeting the shrinking enclosures."""
    roots = list(roots)
    level = 0
    while True:
        lo, hi = enclosure(level)
        hits = [i for i, r in enumerate(roots) if not (r.hi < lo or r.lo > hi)]
        if len(hits) == 1:
            return roots[hits[0]]
        if not hits:
            raise ArithmeticError("modulus enclosure misses every candidate root")
        width = max(hi - lo, Fraction(1, 1 << 400))
        for i in hits:
            if roots[i].width > width / 4:
                roots[i] = roots[i].refine(width / 4)
        level += 1


def sqrt_algebraic(a: AlgebraicReal) -> AlgebraicReal:
    """Positive square root of a positive algebraic real."""
    if a.is_point:
        q = a.lo
        rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
        if rn * rn == q.numerator and rd * rd == q.denominator:
            return AlgebraicReal.rational(Fraction(rn, rd))
        g = IntPoly([-q.numerator, 0, q.denominator])
        lo, hi = sqrt_bounds(q, 64)
        return AlgebraicReal(g, lo, hi)
    g = a.defining.compose_square()
    seq = sturm_sequence(g)
    bits = 64
    while True:
        lo = sqrt_bounds(max(a.lo, Fraction(0)), bits)[0]
        hi = sqrt_bounds(a.hi, bits)[1]
        if g(lo) != 0 and g(hi) != 0 and count_roots(seq, lo, hi) == 1:
            return AlgebraicReal(g, lo, hi)
        a = a.bisect()
        bits += 16


@lru_cache(maxsize=None)
def totients_up_to(limit: int) -> tuple:
    """All n whose totient is at most ``limit`` (n <= 2 limit^2 suffices)."""
    return tuple(n for n in range(1, 2 * limit * limit + 3) if totient(n) <= limit)


# ---------------------------------------------------------------------------
# report types
# ---------------------------------------------------------------------------

@dataclass
class Eigenvalue:
    """One distinct eigenvalue of A with its multiplicity.

    ``rootset``/``root_index`` point at the certified disk of ``c * lambda``;
    ``value`` is the exact real value of lambda for real eigenvalues."""

    multiplicity: int
    real: bool
    sign: int
    approx: complex
    value: AlgebraicReal | None = None
    rootset: RootSet | None = None
    root_index: int | None = None
    conj: int | None = None
    modsq: AlgebraicReal | None = None
    unit_order: int | None = None
    class_index: int = 0
    scaled_value: AlgebraicReal | None = None

    def unit_angle(self) -> float:
        """Argument of lambda/|lambda| in turns, display precision only."""
        return (cmath.phase(self.approx) / (2 * math.pi)) % 1.0

    def to_json(self) -> dict:
        out = {
            "multiplicity": self.multiplicity,
            "real": self.real,
            "approx": {"re": repr(round(self.approx.real, 12)),
                       "im": repr(round(self.approx.imag, 12)),
                       "display_only": True},
            "unit_order": self.unit_order,
        }
        if self.real:
            out["sign"] = self.sign
            out["value"] = self.value.to_json()
        else:
            out["defining"] = self.rootset.f.to_json()
            out["scaled_root_disk"] = {
                "center": self.rootset.disks[self.root_index].center.to_json(),
                "radius_sq": str(self.rootset.disks[self.root_index].radius_sq),
            }
        return out


@dataclass
class PeripheralClass:
    index: int
    modulus: AlgebraicReal
    members: list[int]
    size: int

    def all_roots_of_unity(self, eigs: list[Eigenvalue]) -> bool:
        return all(eigs[j].unit_order is not None for j in self.members)


@dataclass
class SpectrumReport:
    size: int
    scale: int
    char_poly: IntPoly
    eigenvalues: list[Eigenvalue]
    classes: list[PeripheralClass]
    zero_multiplicity: int
    nilpotent: bool
    unique_dominant: bool
    dominant_multiplicity: int | None
    dominant_sign: int | None
    all_real: bool
    all_unit_modulus: bool
    all_roots_of_unity: bool
    group_order: int | None
    notes: list[str] = field(default_factory=list)

    def class_members(self, i: int) -> list[Eigenvalue]:
        """Members of the i-th (1-based) nonempty class; [] past the end."""
        if i < 1 or i > len(self.classes):
            return []
        return [self.eigenvalues[j] for j in self.classes[i - 1].members]

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "scale": self.scale,
            "char_poly_scaled": self.char_poly.to_json(),
            "zero_multiplicity": self.zero_multiplicity,
            "classes": [
                {
                    "index": c.index,
                    "modulus": c.modulus.to_json(),
                    "size": c.size,
                    "members": [self.eigenvalues[j].to_json() for j in c.members],
                }
                for c in self.classes
            ],
            "flags": {
                "nilpotent": self.nilpotent,
                "unique_dominant": self.unique_dominant,
                "dominant_multiplicity": self.dominant_multiplicity,
                "dominant_sign": self.dominant_sign,
                "all_real": self.all_real,
                "all_unit_modulus": self.all_unit_modulus,
                "all_roots_of_unity": self.all_roots_of_unity,
                "group_order": self.group_order,
            },
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# analysis
# ---------------------------------------------------------------------------

def _unit_order(e: Eigenvalue) -> int | None:
    """Order of lambda/|lambda| as a root of unity, verified exactly."""
    if e.real:
        return 1 if e.sign > 0 else 2
    rs, k = e.rootset, e.root_index
    d = rs.degree
    theta = (cmath.phase(rs.disks[k].approx()) / (2 * math.pi)) % 1.0
    candidates = sorted({m for n in totients_up_to(d * (d - 1)) for m in (n, 2 * n)})
    for n in candidates:
        x = n * theta
        if abs(x - round(x)) < 1e-9:
            verdict = monomial_reality([(rs, k, n)])
            if verdict == 1:
                return n
            if verdict == -1:
                return 2 * n
            if verdict is None:
                return None
    return None


def _strip_zero(f: IntPoly) -> tuple[IntPoly, int]:
    k = 0
    coeffs = list(f.coeffs)
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        k += 1
    return IntPoly(coeffs), k


def analyze(a: Matrix) -> SpectrumReport:
    """Exact spectral classification of a square rational matrix."""
    if not a.is_square():
        raise ValueError("matrix must be square")
    s = a.size
    p, c = char_poly(a)
    nilpotent = all(x == 0 for x in p.coeffs[:-1])
    orthogonal = a.is_orthogonal()
    eigs: list[Eigenvalue] = []
    zero_mult = 0
    notes = []
    for f, k in squarefree_decomposition(p):
        f, z = _strip_zero(f)
        zero_mult += z * k
        if f.degree < 1:
            continue
        if f.lc < 0:
            f = -f
        reals = isolate_real_roots(f)
        for r in reals:
            v = r.value.scale(Fraction(1, c))
            eigs.append(Eigenvalue(k, True, r.value.sign(), complex(v.to_float(), 0.0),
                                   value=v, scaled_value=r.value))
        if f.degree > len(reals):
            rs = RootSet(f, len(reals))
            base = len(eigs)
            order = sorted(rs.nonreal)
            pos = {idx: base + t for t, idx in enumerate(order)}
            for idx in order:
                z = rs.disks[idx].approx() / c
                eigs.append(Eigenvalue(k, False, 0, z, rootset=rs, root_index=idx))
            for idx in order:
                eigs[pos[idx]].conj = pos[rs.conj_of(idx)]

    # squared moduli of the scaled eigenvalues, exactly
    for e in eigs:
        if orthogonal:
            e.modsq = AlgebraicReal.rational(c * c)
        elif e.real:
            scaled = e.scaled_value
            roots = _positive_roots(graeffe(scaled.defining).primitive())

            def enclosure(level, a0=scaled):
                a1 = a0
                while a1.lo <= 0 <= a1.hi and not a1.is_point:
                    a1 = a1.bisect()
                a1 = a1.refine(a1.width / (1 << (4 * level)) if a1.width else 0)
                lo, hi = sorted((a1.lo * a1.lo, a1.hi * a1.hi))
                return lo, hi
            e.modsq = _identify(roots, enclosure)
        else:
            rs, idx = e.rootset, e.root_index
            roots = _positive_roots(symmetric_square(rs.f))

            def enclosure(level, rs=rs, idx=idx):
                if level:
                    rs.refine(rs.prec * 2)
                return rs.disks[idx].modulus_sq_bounds(2 * rs.prec + 64)
            e.modsq = _identify(roots, enclosure)

    for e in eigs:
        e.unit_order = _unit_order(e)

    # group by exact modulus, decreasing
    order = sorted(range(len(eigs)), key=cmp_to_key(lambda i, j: -compare_algebraic(eigs[i].modsq, eigs[j].modsq)))
    groups: list[list[int]] = []
    for i in order:
        if groups and compare_algebraic(eigs[groups[-1][0]].modsq, eigs[i].modsq) == EQ:
            groups[-1].append(i)
        else:
            groups.append([i])
    classes = []
    for t, g in enumerate(groups, start=1):
        g.sort(key=lambda j: (-eigs[j].approx.real, -eigs[j].approx.imag))
        rep = eigs[g[0]]
        if orthogonal:
            modulus = AlgebraicReal.rational(1)
        elif any(eigs[j].real for j in g):
            rep = next(eigs[j] for j in g if eigs[j].real)
            modulus = rep.value.abs()
        else:
            modulus = sqrt_algebraic(rep.modsq).scale(Fraction(1, c))
        for j in g:
            eigs[j].class_index = t
        classes.append(PeripheralClass(t, modulus, g, sum(eigs[j].multiplicity for j in g)))

    top = classes[0] if classes else None
    unique = top is not None and len(top.members) == 1
    dom_k = eigs[top.members[0]].multiplicity if unique else None
    dom_sign = eigs[top.members[0]].sign if unique else None
    all_real = all(e.real for e in eigs)
    all_unit = zero_mult == 0 and len(classes) == 1 and classes[0].modulus.compare_rational(1) == EQ
    lam_poly = p.scale_variable(c)
    cyc, cofactor = cyclotomic_factorization(squarefree_part(lam_poly))
    all_rou = cofactor.degree == 0
    group_order = None
    if all_rou:
        group_order = 1
        for n in cyc:
            group_order = math.lcm(group_order, n)
    if zero_mult:
        notes.append("zero eigenvalues form no peripheral class")
    return SpectrumReport(
        size=s, scale=c, char_poly=p, eigenvalues=eigs, classes=classes,
        zero_multiplicity=zero_mult, nilpotent=nilpotent, unique_dominant=unique,
        dominant_multiplicity=dom_k, dominant_sign=dom_sign, all_real=all_real,
        all_unit_modulus=all_unit, all_roots_of_unity=all_rou, group_order=group_order,
        notes=notes,
    )
