"""Certified complex root enclosures for squarefree integer polynomials.

Approximate roots ``z_i`` are turned into inclusion disks with the
Weierstrass correction ``W_i = f(z_i) / (lc * prod_{j != i} (z_i - z_j))``:
every root lies in the union of the disks centred at ``z_i - W_i`` with
radius ``(m - 1)|W_i|`` and a connected component made of k disks holds
exactly k roots. Centres and squared radii are exact Gaussian rationals, so
once the disks are pairwise disjoint each one isolates a single root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .exactnum import Gaussian, IntPoly, root_bound, sqrt_bounds

# relation checks give up beyond this working precision; callers treat that
# as "no verified relation", which only enlarges supersets
MAX_RELATION_BITS = 1 << 17


def mpf_to_fraction(x) -> Fraction:
    x = mpmath.mpf(x)
    if not mpmath.isfinite(x):
        raise ValueError("non-finite approximation")
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return Fraction(0)
    v = Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)
    return -v if sign else v


def fraction_to_mpf(q: Fraction):
    q = Fraction(q)
    return mpmath.mpf(q.numerator) / q.denominator


def _horner(coeffs, z: Gaussian) -> Gaussian:
    acc = Gaussian(0)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


@dataclass(frozen=True)
class RootDisk:
    """Closed disk ``|z - center|^2 <= radius_sq`` holding exactly one root."""

    center: Gaussian
    radius_sq: Fraction

    def radius_upper(self, bits: int) -> Fraction:
        return sqrt_bounds(self.radius_sq, bits)[1]

    def meets_real_axis(self) -> bool:
        return self.center.im * self.center.im <= self.radius_sq

    def contains(self, z: Gaussian) -> bool:
        return (z - self.center).norm() <= self.radius_sq

    def conjugate(self) -> "RootDisk":
        return RootDisk(self.center.conjugate(), self.radius_sq)

    def approx(self) -> complex:
        return complex(float(self.center.re), float(self.center.im))

    def mpc(self):
        return mpmath.mpc(fraction_to_mpf(self.center.re), fraction_to_mpf(self.center.im))

    def modulus_sq_bounds(self, bits: int) -> tuple[Fraction, Fraction]:
        """Rational ``lo <= |z|^2 <= hi`` for every z in the disk."""
        n = self.center.norm()
        a_lo, a_hi = sqrt_bounds(n, bits)
        r = self.radius_upper(bits)
        lo = max(Fraction(0), a_lo - r)
        hi = a_hi + r
        return lo * lo, hi * hi


def disjoint(a: RootDisk, b: RootDisk, bits: int) -> bool:
    d2 = (a.center - b.center).norm()
    r = a.radius_upper(bits) + b.radius_upper(bits)
    return d2 > r * r


def inside(inner: RootDisk, outer: RootDisk, bits: int) -> bool:
    d = sqrt_bounds((inner.center - outer.center).norm(), bits)[1]
    r = d + inner.radius_upper(bits)
    return r * r <= outer.radius_sq


def _to_gaussian(z) -> Gaussian:
    z = mpmath.mpc(z)
    return Gaussian(mpf_to_fraction(z.real), mpf_to_fraction(z.imag))


def _inclusion_disks(f: IntPoly, approx: list[Gaussian]) -> list[RootDisk] | None:
    m = f.degree
    coeffs = [Fraction(c) for c in f.coeffs]
    out = []
    for i, z in enumerate(approx):
        denom = Gaussian(f.lc)
        for j, w in enumerate(approx):
            if j != i:
                denom = denom * (z - w)
        if denom == 0:
            return None
        w_i = _horner(coeffs, z) / denom
        out.append(RootDisk(z - w_i, (m - 1) ** 2 * w_i.norm()))
    return out


def _pairwise_disjoint(disks: list[RootDisk], bits: int) -> bool:
    for i in range(len(disks)):
        for j in range(i + 1, len(disks)):
            if not disjoint(disks[i], disks[j], bits):
                return False
    return True


def _polyroots(f: IntPoly, prec: int) -> list:
    coeffs = [mpmath.mpf(c) for c in reversed(f.coeffs)]
    steps, extra = 100, 2 * prec
    while True:
        try:
            return mpmath.polyroots(coeffs, maxsteps=steps, extraprec=extra)
        except mpmath.libmp.NoConvergence:
            steps *= 2
            extra *= 2
            if steps > 100000:
                raise


def _newton(f: IntPoly, z, iterations: int):
    df = f.derivative()
    cf = list(reversed(f.coeffs))
    cd = list(reversed(df.coeffs))
    for _ in range(iterations):
        d = mpmath.polyval(cd, z)
        if d == 0:
            break
        step = mpmath.polyval(cf, z) / d
        z = z - step
        if step == 0:
            break
    return z


def isolate_complex_roots(f: IntPoly, prec: int = 64) -> tuple[list[RootDisk], int]:
    """Pairwise disjoint inclusion disks, one per root of the squarefree f,
    ordered by the real then imaginary part of the approximations. Returns the
    disks and the working precision in bits."""
    m = f.degree
    if m < 1:
        return [], prec
    if m == 1:
        r = Fraction(-f.coeffs[0], f.coeffs[1])
        return [RootDisk(Gaussian(r), Fraction(0))], prec
    while True:
        with mpmath.workprec(prec):
            approx = [_to_gaussian(z) for z in _polyroots(f, prec)]
        approx.sort(key=lambda g: (g.re, g.im))
        disks = _inclusion_disks(f, approx)
        if disks is not None and _pairwise_disjoint(disks, 2 * prec + 64):
            return disks, prec
        prec *= 2
        if prec > MAX_RELATION_BITS:
            raise ArithmeticError("root separation failed; is the polynomial squarefree?")


def refine_disks(f: IntPoly, disks: list[RootDisk], prec: int) -> list[RootDisk]:
    """Same roots, same order, at working precision ``prec`` bits."""
    m = f.degree
    if m <= 1:
        return list(disks)
    bits = 2 * prec + 64
    iterations = 6 + int(math.log2(max(prec, 64)))
    while True:
        with mpmath.workprec(prec + 32):
            approx = [_to_gaussian(_newton(f, d.mpc(), iterations)) for d in disks]
        new = _inclusion_disks(f, approx)
        if new is not None and _pairwise_disjoint(new, bits):
            ok = True
            for i, nd in enumerate(new):
                if inside(nd, disks[i], bits):
                    continue
                # the root of nd lies in some old disk; rule out the others
                if not all(disjoint(nd, od, bits) for j, od in enumerate(disks) if j != i):
                    ok = False
                    break
            if ok:
                return new
        iterations *= 2
        if iterations > 4096:
            raise ArithmeticError("root refinement failed")


def conjugate_map(disks: list[RootDisk], nonreal: list[int], bits: int) -> dict[int, int] | None:
    """Index of the disk holding the conjugate root, for each nonreal disk, or
    None when the current precision cannot separate them."""
    out = {}
    for i in nonreal:
        cd = disks[i].conjugate()
        hits = [j for j in nonreal if j != i and not disjoint(cd, disks[j], bits)]
        if len(hits) != 1:
            return None
        out[i] = hits[0]
    return out


class RootSet:
    """All roots of one squarefree integer polynomial with refinable disks."""

    def __init__(self, f: IntPoly, real_count: int | None = None):
        if f.lc < 0:
            f = -f
        self.f = f
        self.degree = f.degree
        self.bound = root_bound(f)
        self.disks, self.prec = isolate_complex_roots(f)
        self.real_count = real_count
        self._classify()

    def _classify(self):
        while True:
            nonreal = [i for i, d in enumerate(self.disks) if not d.meets_real_axis()]
            need = None if self.real_count is None else self.degree - self.real_count
            if need is None or len(nonreal) == need:
                conj = conjugate_map(self.disks, nonreal, 2 * self.prec + 64)
                if conj is not None:
                    self.nonreal = nonreal
                    self.conj = conj
                    return
            self.refine(self.prec * 2)

    def refine(self, prec: int) -> None:
        if prec <= self.prec:
            return
        self.disks = refine_disks(self.f, self.disks, prec)
        self.prec = prec

    def ensure_radius(self, bits: int) -> None:
        """Refine until every radius is below 2**-bits."""
        target = Fraction(1, 1 << (2 * bits))
        while any(d.radius_sq > target for d in self.disks):
            self.refine(max(self.prec * 2, bits + 64))

    def conj_of(self, i: int) -> int:
        return self.conj.get(i, i)


# ---------------------------------------------------------------------------
# exact sign of products of roots
# ---------------------------------------------------------------------------

def _falling(m: int, r: int) -> int:
    out = 1
    for k in range(r):
        out *= max(m - k, 1)
    return out


def monomial_reality(items: list[tuple[RootSet, int, int]], max_bits: int = MAX_RELATION_BITS) -> int | None:
    """For roots ``mu_k`` (root index k of a RootSet) and exponents ``e_k >= 0``,
    decide whether ``L = prod mu_k^{e_k}`` is real. Returns +1 (real
    positive), -1 (real negative), 0 (not real) or None when the precision cap
    is reached.

    All roots are algebraic integers (monic integer polynomials), so
    ``delta = L - conj(L)`` is an algebraic integer whose conjugates are
    bounded by ``2 B^D``; a nonzero delta therefore has
    ``|delta| >= (2 B^D)^-(g-1)`` with g the degree of the field generated by
    the roots involved."""
    items = [(rs, k, e) for rs, k, e in items if e]
    if not items:
        return 1
    for rs, _, _ in items:
        if rs.f.lc != 1:
            raise ValueError("relation checks need monic polynomials")
    total = sum(e for _, _, e in items)
    sets = {id(rs): rs for rs, _, _ in items}
    involved: dict[int, set] = {}
    for rs, k, _ in items:
        involved.setdefault(id(rs), set()).update({k, rs.conj_of(k)})
    m = sum(rs.degree for rs in sets.values())
    r = sum(len(v) for v in involved.values())
    g = _falling(m, r)
    b = max(rs.bound for rs in sets.values())
    threshold_bits = (g - 1) * (1 + total * math.log2(b)) + 2
    log_l = total * math.log2(b) + 1
    prec = 128
    while True:
        for rs in sets.values():
            rs.ensure_radius(min(prec, max_bits))
        wp = prec + int(log_l) + 64
        with mpmath.workprec(wp):
            center = mpmath.mpc(1)
            abs_c = mpmath.mpf(1)
            abs_plus = mpmath.mpf(1)
            for rs, k, e in items:
                d = rs.disks[k]
                c = d.mpc()
                rad = fraction_to_mpf(d.radius_upper(wp)) * (1 + mpmath.mpf(2) ** (4 - wp))
                center *= c ** e
                abs_c *= abs(c) ** e
                abs_plus *= (abs(c) + rad) ** e
            slack = abs_plus * (8 * total + 8) * mpmath.mpf(2) ** (-wp)
            err = abs_plus - abs_c + slack
            im = abs(center.imag)
            if im > err:
                return 0
            if threshold_bits < wp - 8 and im + err < mpmath.mpf(2) ** (-threshold_bits - 1):
                if abs(center.real) > err:
                    return 1 if center.real > 0 else -1
        if prec >= max_bits:
            return None
        prec = min(max(2 * prec, int(threshold_bits + log_l) + 64), max_bits)
