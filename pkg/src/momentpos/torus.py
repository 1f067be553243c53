"""Certified lower bounds for trigonometric sums over closed cyclic subgroups
of a torus.

The problem: unit numbers ``u_j`` with real weights ``w_j`` and a constant
``kappa``; bound ``f(n) = kappa + sum_j w_j Re(u_j^(p n + q))`` from below for
all n >= 0. With ``nu_j = u_j^p`` the values f(n) lie in the image of the
closure of ``{(nu_j^n)_j}``, a closed subgroup of the torus cut out by the
multiplicative relations among the ``nu_j``. Any set of *verified* relations
describes a superset of that closure, so a lower bound over the superset is a
valid lower bound for the sequence.

Relations come from three places: exact root-of-unity orders, candidates from
lattice reduction on high precision arguments (each verified exactly with
:func:`monomial_reality`), and nothing else. The superset is parametrized by
the Smith normal form of the relation matrix: finitely many cosets times a
free sub-torus, minimized in closed form when the free terms separate and by
interval branch and bound otherwise.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import iv

from .disks import RootSet, fraction_to_mpf, monomial_reality

MAX_COSETS = 4096


@dataclass
class UnitTerm:
    """``weight * Re(exp(2 pi i phase) u^m)`` where u = mu/|mu| for root
    ``index`` of ``rootset``, or the root of unity ``exp(2 pi i turn)`` when
    ``turn`` is given. Weight and phase are rationals or mpmath intervals."""

    weight: object
    rootset: RootSet | None = None
    index: int | None = None
    turn: Fraction | None = None
    phase: object = Fraction(0)

    def __post_init__(self):
        if self.turn is None and self.rootset is None:
            raise ValueError("unit term needs a root or an exact turn")
        if self.turn is not None:
            self.turn = Fraction(self.turn) % 1
        if not _is_iv(self.weight):
            self.weight = Fraction(self.weight)
        if not _is_iv(self.phase):
            self.phase = Fraction(self.phase) % 1


def _is_iv(x) -> bool:
    return type(x).__module__.startswith("mpmath") and not isinstance(x, (int, Fraction))


@dataclass
class TorusResult:
    certified: bool
    lower_bound: object  # Fraction or mpmath interval
    relations: list[list[int]] = field(default_factory=list)
    exact_orders: list[int | None] = field(default_factory=list)
    smith_diagonal: list[int] = field(default_factory=list)
    cosets: int = 0
    method: str = ""
    boxes: int = 0
    reason: str = ""

    def bound_text(self) -> str:
        lb = self.lower_bound
        if isinstance(lb, Fraction):
            return str(lb)
        if lb is None:
            return "none"
        return mpmath.nstr(mpmath.mpf(lb.a), 30)

    def to_json(self) -> dict:
        return {
            "certified": self.certified,
            "lower_bound": self.bound_text(),
            "relations": [list(r) for r in self.relations],
            "exact_orders": list(self.exact_orders),
            "smith_diagonal": list(self.smith_diagonal),
            "cosets": self.cosets,
            "method": self.method,
            "boxes": self.boxes,
            "reason": self.reason,
        }


# ---------------------------------------------------------------------------
# arguments
# ---------------------------------------------------------------------------

def _turn_interval(term: UnitTerm, bits: int):
    """Interval (in turns) holding the argument of u."""
    if term.turn is not None:
        t = term.turn
        return iv.mpf(t.numerator) / t.denominator
    rs, k = term.rootset, term.index
    rs.ensure_radius(bits)
    d = rs.disks[k]
    with mpmath.workprec(bits + 32):
        c = d.mpc()
        r = fraction_to_mpf(d.radius_upper(bits + 32))
        a = abs(c)
        if r >= a:
            raise ArithmeticError("disk contains zero")
        theta = mpmath.arg(c) / (2 * mpmath.pi)
        spread = mpmath.asin(r / a) / (2 * mpmath.pi) + mpmath.mpf(2) ** (-bits)
        lo, hi = theta - spread, theta + spread
    return iv.mpf([lo, hi])


def _turn_approx(term: UnitTerm, bits: int):
    if term.turn is not None:
        return fraction_to_mpf(term.turn)
    rs, k = term.rootset, term.index
    rs.ensure_radius(bits)
    with mpmath.workprec(bits + 32):
        return (mpmath.arg(rs.disks[k].mpc()) / (2 * mpmath.pi)) % 1


# ---------------------------------------------------------------------------
# relations
# ---------------------------------------------------------------------------

def verify_relation(terms: list[UnitTerm], power: int, z: list[int]) -> int | None:
    """Exact value of ``prod (u_j^power)^(z_j)`` when it is +1 or -1; 0 when it
    is not real; None when undecided within the precision cap."""
    items: dict[tuple, int] = {}
    sets = {}
    exact_turn = Fraction(0)
    for t, zj in zip(terms, z):
        if zj == 0:
            continue
        e = power * zj
        if t.turn is not None:
            exact_turn += t.turn * e
            continue
        rs = t.rootset
        sets[id(rs)] = rs
        k = t.index if e > 0 else rs.conj_of(t.index)
        key = (id(rs), k)
        items[key] = items.get(key, 0) + abs(e)
    exact_turn %= 1
    if exact_turn not in (0, Fraction(1, 2)):
        # remaining factor is real only if it cancels this phase; fall back to
        # treating the candidate as unverified
        if items:
            return None
        return 0
    verdict = monomial_reality([(sets[i], k, e) for (i, k), e in items.items()])
    if verdict in (None, 0):
        return verdict
    return verdict if exact_turn == 0 else -verdict


def find_relations(terms: list[UnitTerm], power: int, bound: int) -> list[list[int]]:
    """Verified integer relations ``sum z_j phi_j = 0`` (mod 1) among the
    non-exact generators ``nu_j = u_j^power``, found by lattice reduction."""
    idx = [j for j, t in enumerate(terms) if t.turn is None]
    n = len(idx)
    if n == 0:
        return []
    from sympy import ZZ
    from sympy.polys.matrices import DomainMatrix

    bits = 64 * (n + 1) + int(n * math.log2(bound + 1)) * 2 + 40
    big = 1 << (bits - 16)
    turns = [_turn_approx(terms[j], bits) * power for j in idx]
    rows = []
    with mpmath.workprec(bits + 32):
        for a, tj in enumerate(turns):
            row = [0] * (n + 1)
            row[a] = 1
            row[n] = int(mpmath.nint((tj % 1) * big))
            rows.append(row)
    rows.append([0] * n + [big])
    basis = DomainMatrix([[ZZ(v) for v in r] for r in rows], (n + 1, n + 1), ZZ).lll().to_list()
    found: list[list[int]] = []
    for row in basis:
        zs = [int(v) for v in row[:n]]
        if not any(zs) or max(abs(v) for v in zs) > bound:
            continue
        if abs(int(row[n])) > n * bound + 2:
            continue
        full = [0] * len(terms)
        for a, j in enumerate(idx):
            full[j] = zs[a]
        verdict = verify_relation(terms, power, full)
        if verdict == 1:
            found.append(full)
        elif verdict == -1:
            found.append([2 * v for v in full])
    return found


def exact_relations(terms: list[UnitTerm], power: int) -> tuple[list[list[int]], list[int | None]]:
    rels, orders = [], []
    for j, t in enumerate(terms):
        if t.turn is None:
            orders.append(None)
            continue
        order = ((t.turn * power) % 1).denominator
        orders.append(order)
        row = [0] * len(terms)
        row[j] = order
        rels.append(row)
    return rels, orders


def smith_parametrization(rels: list[list[int]], n: int):
    """``(diag, V)`` with ``phi = V psi``; psi_i ranges over multiples of
    1/diag_i for i < len(diag) and is free otherwise."""
    from sympy import Matrix
    from sympy.matrices.normalforms import smith_normal_decomp

    if not rels:
        return [], [[int(i == j) for j in range(n)] for i in range(n)]
    z = Matrix(rels)
    d, _, v = smith_normal_decomp(z)
    diag = []
    for i in range(min(d.rows, d.cols)):
        if d[i, i] == 0:
            break
        diag.append(abs(int(d[i, i])))
    vv = [[int(v[i, j]) for j in range(n)] for i in range(n)]
    return diag, vv


# ---------------------------------------------------------------------------
# minimization
# ---------------------------------------------------------------------------

def _cos_turn(x):
    return iv.cos(2 * iv.pi * x)


def _sin_turn(x):
    return iv.sin(2 * iv.pi * x)


_COS = {Fraction(0): 1, Fraction(1, 6): Fraction(1, 2), Fraction(1, 4): 0, Fraction(1, 3): Fraction(-1, 2),
        Fraction(1, 2): -1, Fraction(2, 3): Fraction(-1, 2), Fraction(3, 4): 0, Fraction(5, 6): Fraction(1, 2)}
_SIN = {Fraction(0): 0, Fraction(1, 12): Fraction(1, 2), Fraction(1, 4): 1, Fraction(5, 12): Fraction(1, 2),
        Fraction(1, 2): 0, Fraction(7, 12): Fraction(-1, 2), Fraction(3, 4): -1, Fraction(11, 12): Fraction(-1, 2)}


def _cos_of(b):
    """cos(2 pi b): exact Fraction for the rational values, else an interval."""
    if isinstance(b, Fraction) and b % 1 in _COS:
        return Fraction(_COS[b % 1])
    return _cos_turn(_to_iv(b))


def _sin_of(b):
    if isinstance(b, Fraction) and b % 1 in _SIN:
        return Fraction(_SIN[b % 1])
    return _sin_turn(_to_iv(b))


def _to_iv(x):
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / x.denominator
    return x


def _all_exact(*xs) -> bool:
    return all(isinstance(x, Fraction) for x in xs)


def _abs_upper(w) -> float:
    if isinstance(w, Fraction):
        return abs(float(w))
    return float(max(abs(mpmath.mpf(w.a)), abs(mpmath.mpf(w.b))))


def _lo(x):
    if isinstance(x, Fraction):
        return x
    return mpmath.mpf(x.a)


def _as_mpf(x):
    return fraction_to_mpf(x) if isinstance(x, Fraction) else x


def _separable_bound(const, groups):
    """``const - sum |A_g|`` with exact arithmetic when possible."""
    exact = isinstance(const, Fraction)
    mods = []
    for re, im in groups:
        if isinstance(re, Fraction) and isinstance(im, Fraction):
            n = re * re + im * im
            rn, rd = math.isqrt(n.numerator), math.isqrt(n.denominator)
            if rn * rn == n.numerator and rd * rd == n.denominator:
                mods.append(Fraction(rn, rd))
                continue
            mods.append(iv.sqrt(_to_iv(n)))
        else:
            mods.append(iv.sqrt(_to_iv(re) ** 2 + _to_iv(im) ** 2))
        exact = False
    if exact:
        return const - sum(mods, Fraction(0))
    total = _to_iv(const)
    for m in mods:
        total = total - _to_iv(m)
    return total


def _rank(rows: list[list[int]]) -> int:
    from sympy import Matrix

    if not rows:
        return 0
    return Matrix(rows).rank()


class _Objective:
    """kappa + sum_j w_j cos(2 pi (beta_j + l_j . psi)) over psi in [0,1]^f."""

    def __init__(self, const, weights, betas, ells):
        self.const = const
        self.weights = weights
        self.betas = betas
        self.ells = ells
        self.lip = [sum(_abs_upper(w) * 2 * math.pi * abs(l[k]) for w, l in zip(weights, ells))
                    for k in range(len(ells[0]) if ells else 0)]

    def box(self, lo, hi):
        total = _to_iv(self.const)
        for w, b, l in zip(self.weights, self.betas, self.ells):
            arg = _to_iv(b)
            for k, c in enumerate(l):
                if c:
                    arg = arg + c * iv.mpf([lo[k], hi[k]])
            total = total + _to_iv(w) * _cos_turn(arg)
        return total

    def point(self, x):
        return self.box(x, x)


def _branch_and_bound(obj: _Objective, dim: int, max_boxes: int):
    """Returns (lower bound interval or None, status, boxes)."""
    root = ([mpmath.mpf(0)] * dim, [mpmath.mpf(1)] * dim)
    lb = obj.box(*root)
    heap = [(mpmath.mpf(lb.a), 0, root)]
    counter = itertools.count(1)
    boxes = 1
    lip = [mpmath.mpf(x) * (1 + mpmath.mpf(2) ** -20) for x in obj.lip]
    while heap:
        low, _, (lo, hi) = heap[0]
        if low >= 0:
            return iv.mpf(low), "certified", boxes
        if boxes >= max_boxes:
            return iv.mpf(low), "budget", boxes
        heapq.heappop(heap)
        mid = [(a + b) / 2 for a, b in zip(lo, hi)]
        val = obj.point(mid)
        if mpmath.mpf(val.b) < 0:
            return val, "negative", boxes
        k = max(range(dim), key=lambda i: (hi[i] - lo[i]) * (lip[i] + 1))
        for part in ((lo[k], mid[k]), (mid[k], hi[k])):
            nlo, nhi = list(lo), list(hi)
            nlo[k], nhi[k] = part
            bound = mpmath.mpf(obj.box(nlo, nhi).a)
            cval = obj.point([(a + b) / 2 for a, b in zip(nlo, nhi)])
            lip_bound = mpmath.mpf(cval.a) - sum(lip[i] * (nhi[i] - nlo[i]) / 2 for i in range(dim))
            boxes += 1
            heapq.heappush(heap, (max(bound, lip_bound), next(counter), (nlo, nhi)))
    return None, "empty", boxes


def minimize(terms: list[UnitTerm], const, p: int = 1, q: int = 0, relation_bound: int = 20,
             max_boxes: int = 20000, bits: int = 128) -> TorusResult:
    """Certified lower bound of ``const + sum w_j Re(u_j^(p n + q))`` over the
    relation superset; ``certified`` is True when the bound is >= 0."""
    const = Fraction(const)
    n = len(terms)
    rels, orders = exact_relations(terms, p)
    try:
        rels = rels + find_relations(terms, p, relation_bound)
    except ArithmeticError:
        pass
    diag, v = smith_parametrization(rels, n)
    r = len(diag)
    free = n - r
    shifts = []
    for t in terms:
        if t.turn is not None:
            s = (t.turn * q) % 1
        else:
            s = _turn_interval(t, bits) * q if q else Fraction(0)
        if isinstance(s, Fraction) and isinstance(t.phase, Fraction):
            shifts.append((s + t.phase) % 1)
        else:
            shifts.append(_to_iv(s) + _to_iv(t.phase))
    weights = [t.weight for t in terms]
    ells = [[v[j][i] for i in range(r, n)] for j in range(n)]
    cosets = 1
    for d in diag:
        cosets *= d
    result = TorusResult(False, None, relations=rels, exact_orders=orders, smith_diagonal=diag, cosets=cosets)
    if cosets > MAX_COSETS:
        result.reason = "too many cosets"
        return result
    worst = None
    boxes_used = 0
    for a in itertools.product(*[range(d) for d in diag]):
        alphas = [sum((Fraction(v[j][i] * a[i], diag[i]) for i in range(r)), Fraction(0)) for j in range(n)]
        betas = []
        for j in range(n):
            s = shifts[j]
            betas.append((s + alphas[j]) % 1 if isinstance(s, Fraction) else s + _to_iv(alphas[j]))
        # constant terms and groups of equal (or opposite) free parts
        k0 = const
        groups: dict[tuple, list] = {}
        for j in range(n):
            l = tuple(ells[j])
            w = weights[j]
            b = betas[j]
            if not any(l):
                cb = _cos_of(b)
                if _all_exact(cb, k0, w):
                    k0 = k0 + w * cb
                else:
                    k0 = _to_iv(k0) + _to_iv(w) * _to_iv(cb)
                continue
            first = next(c for c in l if c)
            sign = 1 if first > 0 else -1
            key = tuple(sign * c for c in l)
            groups.setdefault(key, []).append((w, b, sign))
        coeffs = []
        for key, items in groups.items():
            re, im = Fraction(0), Fraction(0)
            for w, b, sign in items:
                cr, ci = _cos_of(b), sign * _sin_of(b)
                if _all_exact(cr, re, w):
                    re = re + w * cr
                else:
                    re = _to_iv(re) + _to_iv(w) * _to_iv(cr)
                if _all_exact(ci, im, w):
                    im = im + w * ci
                else:
                    im = _to_iv(im) + _to_iv(w) * _to_iv(ci)
            coeffs.append((re, im))
        if _rank([list(k) for k in groups]) == len(groups):
            bound = _separable_bound(k0, coeffs)
            method = "separable"
        else:
            obj = _Objective(k0, [w for j in range(n) for w in [weights[j]] if any(ells[j])],
                             [betas[j] for j in range(n) if any(ells[j])],
                             [ells[j] for j in range(n) if any(ells[j])])
            bound, status, used = _branch_and_bound(obj, free, max(1, max_boxes - boxes_used))
            boxes_used += used
            method = "branch_and_bound"
            if status != "certified":
                result.lower_bound = bound
                result.method = method
                result.boxes = boxes_used
                result.reason = status
                return result
        low = _lo(bound)
        if worst is None or _as_mpf(low) < _as_mpf(_lo(worst)):
            worst = bound
        result.method = method
        if low < 0:
            result.lower_bound = worst
            result.boxes = boxes_used
            result.reason = "superset minimum below zero"
            return result
    if worst is None:
        worst = const
    result.lower_bound = worst
    result.boxes = boxes_used
    result.certified = _lo(worst) >= 0
    return result
