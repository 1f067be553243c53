"""Decision procedures for positivity of moment sequences.

Every procedure returns a :class:`Decision`. A NO verdict always carries an
exact negative-moment witness; a YES verdict carries a certificate that can be
re-checked by exact recomputation (see :mod:`momentpos.certificates`); UNKNOWN
is only returned when a budget runs out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
from mpmath import iv

from .exactnum import (
    AlgebraicReal,
    Gaussian,
    IntPoly,
    count_roots,
    cyclotomic,
    format_rational,
    parse_rational,
    poly_divmod,
    poly_gcd,
    sturm_sequence,
)
from .lrs import (
    GAUSSIAN,
    RATIONAL,
    LRSSpec,
    companion,
    minimal_recurrence,
    minimize as minimize_lrs,
    terms,
)
from .matrix import TRACE, LinearFunctional, Matrix, iter_moments, iter_scaled_trace_moments
from .spectra import Eigenvalue, SpectrumReport, analyze
from .torus import UnitTerm, _turn_interval, minimize as torus_minimize

YES, NO, UNKNOWN = "yes", "no", "unknown"

NEGATIVE_MOMENT = "negative_moment"
DOMINANCE_BOUND = "dominance_bound"
FINITE_GROUP = "finite_group"
TORUS_LOWER_BOUND = "torus_lower_bound"
EVAL_TABLE = "eval_table"
UNITARY_REDUCTION = "unitary_reduction"
BUDGET_EXHAUSTED = "budget_exhausted"

# cheap scan run before the torus strand; it cannot change the verdict
# because a YES from the torus rules out negative moments
PRESCAN = 64


# ---------------------------------------------------------------------------
# result types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Budget:
    """Search limits; all fields must be positive."""

    max_moment_index: int = 10_000
    max_invariant_degree: int = 4
    relation_bound: int = 20
    minimization_depth: int = 20_000
    tolerance: Fraction = Fraction(1, 1 << 40)

    def __post_init__(self):
        object.__setattr__(self, "tolerance", Fraction(self.tolerance))
        for name in ("max_moment_index", "max_invariant_degree", "relation_bound", "minimization_depth"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"budget field {name} must be positive")
        if self.tolerance <= 0:
            raise ValueError("budget tolerance must be positive")

    @property
    def bits(self) -> int:
        """Working precision implied by the tolerance."""
        return max(64, math.ceil(math.log2(1 / self.tolerance)) + 24)

    def to_json(self) -> dict:
        return {
            "max_moment_index": self.max_moment_index,
            "max_invariant_degree": self.max_invariant_degree,
            "relation_bound": self.relation_bound,
            "minimization_depth": self.minimization_depth,
            "tolerance": format_rational(self.tolerance),
        }

    @staticmethod
    def from_json(obj) -> "Budget":
        obj = dict(obj or {})
        if "tolerance" in obj:
            obj["tolerance"] = parse_rational(obj["tolerance"])
        return Budget(**obj)


@dataclass
class Certificate:
    kind: str
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        out.update(self.data)
        return out


@dataclass
class Decision:
    verdict: str
    certificate: Certificate
    budget_spent: dict = field(default_factory=dict)
    criterion: str | None = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "certificate": self.certificate.to_json(),
            "budget_spent": dict(self.budget_spent),
        }
        if self.criterion is not None:
            out["criterion"] = self.criterion
        if self.details:
            out["details"] = self.details
        return out


def _spent(n: int = 0, degree: int = 0, relation_bound: int = 0, boxes: int = 0) -> dict:
    return {"moment_index": n, "degree": degree, "relation_bound": relation_bound, "boxes": boxes}


def matrix_instance(a: Matrix, phi: LinearFunctional | None = None) -> dict:
    out = {"type": "matrix", "matrix": a.to_json()}
    if phi is not None and phi.kind != TRACE:
        out["functional"] = phi.to_json()
    return out


def _witness(instance: dict, n: int, value, **extra) -> Certificate:
    text = format_rational(value) if isinstance(value, (int, Fraction)) else str(value)
    data = {"instance": instance, "n": n, "value": text}
    data.update(extra)
    return Certificate(NEGATIVE_MOMENT, data)


def _unknown(instance: dict, reason: str, budget: Budget, **extra) -> Certificate:
    data = {"instance": instance, "reason": reason, "budget": budget.to_json()}
    data.update(extra)
    return Certificate(BUDGET_EXHAUSTED, data)


# ---------------------------------------------------------------------------
# exact moment scans
# ---------------------------------------------------------------------------

def first_negative_trace(a: Matrix, stop: int, start: int = 0) -> tuple[int, Fraction] | None:
    """Smallest n in [start, stop] with tr(A^n) < 0, with the exact value."""
    c = a.scaled_integer()[1]
    for n, t in iter_scaled_trace_moments(a):
        if n > stop:
            return None
        if n >= start and t < 0:
            return n, Fraction(t, c ** n)
    return None


def trace_table(a: Matrix, stop: int) -> list[Fraction]:
    """Exact tr(A^n) for n = 0..stop."""
    c = a.scaled_integer()[1]
    out = []
    for n, t in iter_scaled_trace_moments(a):
        if n > stop:
            break
        out.append(Fraction(t, c ** n))
    return out


def _first_negative_functional(a: Matrix, phi: LinearFunctional, stop: int):
    for n, v in iter_moments(a, phi):
        if n > stop:
            return None
        if v < 0:
            return n, v
    return None


# ---------------------------------------------------------------------------
# certified decay bounds
# ---------------------------------------------------------------------------

def _iv_of(q: Fraction):
    q = Fraction(q)
    return iv.mpf(q.numerator) / q.denominator


def positive_enclosure(a: AlgebraicReal, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Rational ``0 < lo <= a <= hi`` with relative width about 2**-bits."""
    if a.sign() <= 0:
        raise ValueError("expected a positive algebraic number")
    b = a
    while b.lo <= 0:
        b = b.bisect()
    b = b.refine(b.lo / (1 << bits))
    return b.lo, b.hi


def _log_interval(a: AlgebraicReal, bits: int):
    lo, hi = positive_enclosure(a, bits)
    return iv.log(iv.mpf([_iv_of(lo).a, _iv_of(hi).b]))


def decay_index(ratio, top: AlgebraicReal, second: AlgebraicReal, bits: int = 64) -> int:
    """An integer N >= 0 with ``ratio * (second/top)^n <= 1`` for every
    n >= N, computed from outward rounded interval logarithms: the ceiling of
    ``log(ratio) / (log top - log second)`` (0 when ratio <= 1). ``ratio``
    is a positive rational or an mpmath interval."""
    r = _iv_of(ratio) if isinstance(ratio, (int, Fraction)) else ratio
    if mpmath.mpf(r.b) <= 1:
        return 0
    num = iv.log(r)
    while True:
        den = _log_interval(top, bits) - _log_interval(second, bits)
        if mpmath.mpf(den.a) > 0:
            break
        bits *= 2
        if bits > 1 << 14:
            raise ArithmeticError("moduli too close to separate")
    q = num / den
    return max(0, int(mpmath.ceil(mpmath.mpf(q.b))))


# ---------------------------------------------------------------------------
# dominant eigenvalue
# ---------------------------------------------------------------------------

def decide_dominant(a: Matrix, phi: LinearFunctional | None = None, budget: Budget | None = None,
                    report: SpectrumReport | None = None) -> Decision:
    """Positivity of tr(A^n) when A has a unique dominant eigenvalue.

    With k the multiplicity of the dominant eigenvalue lambda_1 and s the
    size, ``|tr(A^n) - k lambda_1^n| <= (s - k)|lambda_2|^n`` for n >= 1, so
    only the moments up to the decay index need an exact check."""
    if phi is not None and phi.kind != TRACE:
        raise ValueError("the dominant decider handles the trace functional; use decide_lrs otherwise")
    budget = budget or Budget()
    report = report or analyze(a)
    inst = matrix_instance(a)
    s = a.size
    if report.nilpotent:
        cert = Certificate(DOMINANCE_BOUND, {"instance": inst, "nilpotent": True, "N": 0,
                                             "checked": [format_rational(s)]})
        return Decision(YES, cert, _spent(0))
    if not report.unique_dominant:
        raise ValueError("no unique dominant eigenvalue")
    lam = report.eigenvalues[report.classes[0].members[0]]
    k = lam.multiplicity
    if lam.sign < 0:
        # odd powers eventually dominate with the wrong sign
        hit = first_negative_trace(a, budget.max_moment_index)
        if hit:
            return Decision(NO, _witness(inst, *hit), _spent(hit[0]))
        return Decision(UNKNOWN, _unknown(inst, "no negative moment within max_moment_index", budget),
                        _spent(budget.max_moment_index))
    if len(report.classes) == 1:
        big_n = 0
        second = None
    else:
        second = report.classes[1].modulus
        big_n = decay_index(Fraction(s - k, k), lam.value, second, budget.bits)
    stop = min(big_n, budget.max_moment_index)
    table = trace_table(a, stop)
    for n, v in enumerate(table):
        if v < 0:
            return Decision(NO, _witness(inst, n, v), _spent(n))
    if big_n > budget.max_moment_index:
        return Decision(UNKNOWN, _unknown(inst, "decay index exceeds max_moment_index", budget, N=big_n),
                        _spent(stop))
    cert = Certificate(DOMINANCE_BOUND, {
        "instance": inst,
        "N": big_n,
        "multiplicity": k,
        "lambda1": lam.value.to_json(),
        "lambda2_modulus": second.to_json() if second is not None else None,
        "ratio": format_rational(Fraction(s - k, k)),
        "checked": [format_rational(v) for v in table],
    })
    return Decision(YES, cert, _spent(stop))


# ---------------------------------------------------------------------------
# real spectrum
# ---------------------------------------------------------------------------

def class_weights(report: SpectrumReport) -> list[int]:
    """``m_+ - m_-`` for each class of a real spectrum: the coefficient of
    ``r^n`` in the odd moments."""
    out = []
    for cl in report.classes:
        out.append(sum(report.eigenvalues[j].sign * report.eigenvalues[j].multiplicity for j in cl.members))
    return out


def decide_real_spectrum(a: Matrix, budget: Budget | None = None,
                         report: SpectrumReport | None = None) -> Decision:
    """Positivity of tr(A^n) for a matrix with only real eigenvalues.

    Even moments are sums of even powers. Odd moments are
    ``sum_r e(r) r^n`` with ``e(r) = m_+ - m_-``, so the largest modulus with
    a nonzero weight decides the tail and a finite check covers the rest."""
    budget = budget or Budget()
    report = report or analyze(a)
    if not report.all_real:
        raise ValueError("matrix has non-real eigenvalues")
    inst = matrix_instance(a)
    weights = class_weights(report)
    nonzero = [i for i, e in enumerate(weights) if e]
    if not nonzero:
        cert = Certificate(EVAL_TABLE, {"instance": inst, "path": "real_spectrum", "weights": weights,
                                        "N": 0, "checked": [format_rational(a.size)]})
        return Decision(YES, cert, _spent(0))
    top = nonzero[0]
    if weights[top] < 0:
        hit = first_negative_trace(a, budget.max_moment_index)
        if hit:
            return Decision(NO, _witness(inst, *hit), _spent(hit[0]))
        return Decision(UNKNOWN, _unknown(inst, "no negative moment within max_moment_index", budget),
                        _spent(budget.max_moment_index))
    if len(nonzero) == 1:
        big_n = 1
    else:
        tail = sum(abs(weights[i]) for i in nonzero[1:])
        big_n = max(1, decay_index(Fraction(tail, weights[top]), report.classes[top].modulus,
                                   report.classes[nonzero[1]].modulus, budget.bits))
    stop = min(big_n, budget.max_moment_index)
    table = trace_table(a, stop)
    for n, v in enumerate(table):
        if v < 0:
            return Decision(NO, _witness(inst, n, v), _spent(n))
    if big_n > budget.max_moment_index:
        return Decision(UNKNOWN, _unknown(inst, "decay index exceeds max_moment_index", budget, N=big_n),
                        _spent(stop))
    cert = Certificate(EVAL_TABLE, {"instance": inst, "path": "real_spectrum", "weights": weights,
                                    "N": big_n, "checked": [format_rational(v) for v in table]})
    return Decision(YES, cert, _spent(stop))


# ---------------------------------------------------------------------------
# unit terms shared by the orthogonal and peripheral procedures
# ---------------------------------------------------------------------------

def exact_turn(e: Eigenvalue) -> Fraction | None:
    """Argument of lambda/|lambda| in turns, when it is a root of unity."""
    if e.unit_order is None:
        return None
    if e.real:
        return Fraction(0) if e.sign > 0 else Fraction(1, 2)
    o = e.unit_order
    theta = e.unit_angle() / (2 * math.pi)
    return Fraction(round(theta * o) % o, o)


def unit_terms(members: Sequence[Eigenvalue], sign: int = 1) -> tuple[Fraction, list[UnitTerm]]:
    """``sum_members mult * (lambda/|lambda|)^m`` as constant plus unit terms,
    all multiplied by ``sign``. Conjugate pairs become one term of weight
    ``2 mult``."""
    const = Fraction(0)
    out = []
    for e in members:
        w = sign * e.multiplicity
        if e.real:
            if e.sign > 0:
                const += w
            else:
                out.append(UnitTerm(Fraction(w), turn=Fraction(1, 2)))
            continue
        if e.approx.imag < 0:
            continue
        t = exact_turn(e)
        if t is not None:
            out.append(UnitTerm(Fraction(2 * w), turn=t))
        else:
            out.append(UnitTerm(Fraction(2 * w), rootset=e.rootset, index=e.root_index))
    return const, out


def _term_json(t: UnitTerm) -> dict:
    out = {"weight": _num_text(t.weight)}
    if t.turn is not None:
        out["turn"] = format_rational(t.turn)
    else:
        out["defining"] = t.rootset.f.to_json()
        d = t.rootset.disks[t.index]
        out["root_disk"] = {"center": d.center.to_json(), "radius_sq": format_rational(d.radius_sq)}
    if t.phase != 0:
        out["phase"] = _num_text(t.phase)
    return out


def _num_text(x) -> str:
    if isinstance(x, (int, Fraction)):
        return format_rational(x)
    return f"[{mpmath.nstr(mpmath.mpf(x.a), 20)}, {mpmath.nstr(mpmath.mpf(x.b), 20)}]"


def _torus_cert(instance: dict, res, const, terms, p: int, q: int, **extra) -> Certificate:
    data = {
        "instance": instance,
        "constant": _num_text(const),
        "terms": [_term_json(t) for t in terms],
        "progression": [p, q],
        "lower_bound": res.bound_text(),
        "relations": [list(r) for r in res.relations],
        "smith_diagonal": list(res.smith_diagonal),
        "cosets": res.cosets,
        "method": res.method,
    }
    data.update(extra)
    return Certificate(TORUS_LOWER_BOUND, data)


# ---------------------------------------------------------------------------
# orthogonal matrices
# ---------------------------------------------------------------------------

def decide_orthogonal(a: Matrix, budget: Budget | None = None, report: SpectrumReport | None = None,
                      finite_group: bool = True, torus: bool = True) -> Decision:
    """Positivity of tr(A^n) for rational orthogonal A.

    Strand order: finite group (complete when every eigenvalue is a root of
    unity), certified torus minimization (YES only), exact enumeration (NO
    only). The two flags switch strands off for testing."""
    budget = budget or Budget()
    if not a.is_orthogonal():
        raise ValueError("matrix is not orthogonal")
    inst = matrix_instance(a)
    report = report or analyze(a)
    if finite_group and report.all_roots_of_unity:
        o = report.group_order
        if not (a ** o).is_identity():
            raise ArithmeticError("group order check failed")
        table = trace_table(a, o - 1)
        for n, v in enumerate(table):
            if v < 0:
                return Decision(NO, _witness(inst, n, v, period=o), _spent(n))
        cert = Certificate(FINITE_GROUP, {"instance": inst, "order": o,
                                          "traces": [format_rational(v) for v in table]})
        return Decision(YES, cert, _spent(o - 1))
    pre = min(PRESCAN, budget.max_moment_index)
    hit = first_negative_trace(a, pre)
    if hit:
        return Decision(NO, _witness(inst, *hit), _spent(hit[0]))
    boxes = 0
    if torus:
        const, terms = unit_terms(report.eigenvalues)
        res = torus_minimize(terms, const, 1, 0, budget.relation_bound, budget.minimization_depth, budget.bits)
        boxes = res.boxes
        if res.certified:
            return Decision(YES, _torus_cert(inst, res, const, terms, 1, 0, budget=budget.to_json()),
                            _spent(pre, relation_bound=budget.relation_bound, boxes=boxes))
    hit = first_negative_trace(a, budget.max_moment_index, pre + 1)
    if hit:
        return Decision(NO, _witness(inst, *hit), _spent(hit[0], relation_bound=budget.relation_bound, boxes=boxes))
    return Decision(UNKNOWN, _unknown(inst, "no strand certified within budget", budget),
                    _spent(budget.max_moment_index, relation_bound=budget.relation_bound, boxes=boxes))


# ---------------------------------------------------------------------------
# invariant polynomials of a generated group
# ---------------------------------------------------------------------------

def _monomials(nvars: int, degree: int) -> list[tuple]:
    out = []

    def rec(prefix, left, slots):
        if slots == 0:
            out.append(tuple(prefix))
            return
        for e in range(left, -1, -1):
            rec(prefix + [e], left - e, slots - 1)

    for d in range(degree, -1, -1):
        start = len(out)
        rec([], d, nvars)
        out[start:] = [m for m in out[start:] if sum(m) == d]
    return out


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def invariant_polys(generators: Sequence[Matrix], degree: int):
    """Basis of the polynomials p in the s*s entries of X (row-major
    variables) of degree at most ``degree`` with ``p(I) = 0`` and
    ``p(A X) = p(X)`` for every generator A.

    The basis is the reduced-echelon null space of the linear conditions on
    the coefficients, with monomials in graded descending order, scaled to
    primitive integer polynomials with positive leading coefficient."""
    from sympy import QQ
    from sympy.polys.matrices import DomainMatrix

    from .commpoly import CommPoly

    if degree < 1:
        raise ValueError("degree must be at least 1")
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    s = gens[0].size
    for g in gens:
        if g.size != s:
            raise ValueError("generators must have equal size")
        if not g.is_orthogonal():
            raise ValueError("generators must be orthogonal")
    nv = s * s
    monos = _monomials(nv, degree)
    col = {m: i for i, m in enumerate(monos)}
    rows = []
    # p(I) = 0
    diag = {i * s + i for i in range(s)}
    rows.append([Fraction(1) if all(e == 0 or v in diag for v, e in enumerate(m)) else Fraction(0)
                 for m in monos])
    unit = [tuple(int(v == w) for w in range(nv)) for v in range(nv)]
    for g in gens:
        # entry (i, j) of g X is sum_k g_ik x_kj
        forms = []
        for i in range(s):
            for j in range(s):
                forms.append({unit[k * s + j]: Fraction(g[i, k]) for k in range(s) if g[i, k] != 0})
        cache: dict = {}
        equations: dict = {}
        for ci, m in enumerate(monos):
            img = {(0,) * nv: Fraction(1)}
            for v, e in enumerate(m):
                if e:
                    key = (v, e)
                    if key not in cache:
                        pw = {(0,) * nv: Fraction(1)}
                        for _ in range(e):
                            pw = _poly_mul(pw, forms[v])
                        cache[key] = pw
                    img = _poly_mul(img, cache[key])
            img = dict(img)
            img[m] = img.get(m, 0) - 1
            for t, c in img.items():
                if c:
                    equations.setdefault(t, {})[ci] = c
        for t in sorted(equations, key=lambda x: col[x]):
            row = [Fraction(0)] * len(monos)
            for ci, c in equations[t].items():
                row[ci] = c
            rows.append(row)
    dm = DomainMatrix([[QQ(c.numerator, c.denominator) for c in r] for r in rows], (len(rows), len(monos)), QQ)
    basis = dm.nullspace().to_Matrix()
    out = []
    for r in range(basis.rows):
        vec = [Fraction(int(x.p), int(x.q)) for x in basis.row(r)]
        den = math.lcm(*(v.denominator for v in vec))
        ints = [int(v * den) for v in vec]
        g = math.gcd(*ints)
        ints = [v // g for v in ints]
        lead = next(v for v in ints if v)
        if lead < 0:
            ints = [-v for v in ints]
        out.append(CommPoly(nv, {monos[i]: c for i, c in enumerate(ints) if c}))
    return out


# ---------------------------------------------------------------------------
# unitary matrices over Q[i]
# ---------------------------------------------------------------------------

def psi_embed(u: Matrix) -> Matrix:
    """``A + iB -> [[A, -B], [B, A]]`` for a unitary Gaussian-rational U."""
    u = u.map(Gaussian.coerce)
    if not u.is_unitary():
        raise ValueError("matrix is not unitary")
    re = u.map(lambda z: z.re)
    im = u.map(lambda z: z.im)
    return Matrix.block([[re, -im], [im, re]])


def imaginary_form(s: int) -> Matrix:
    """J with ``Im tr(U^n) = tr(psi(U)^n J) / 2``."""
    zero = Matrix.zeros(s)
    one = Matrix.identity(s)
    return Matrix.block([[zero, one], [-one, zero]])


def unitary_instance(u: Matrix) -> dict:
    return {"type": "unitary", "matrix": u.map(Gaussian.coerce).to_json()}


def decide_unitary(u: Matrix, budget: Budget | None = None) -> Decision:
    """Positivity of tr(U^n), read as real and nonnegative, for unitary U over
    Q[i]. The imaginary parts form a sequence with a recurrence of order 2s,
    so 2s consecutive zeros make it vanish; the real parts are half the
    traces of the orthogonal matrix psi(U)."""
    budget = budget or Budget()
    u = u.map(Gaussian.coerce)
    psi = psi_embed(u)
    s = u.size
    inst = unitary_instance(u)
    im_phi = LinearFunctional.trace_form(imaginary_form(s))
    limit = 4 * s
    re_it = iter_moments(psi)
    im_it = iter_moments(psi, im_phi)
    for n in range(limit + 1):
        re = next(re_it)[1] / 2
        im = next(im_it)[1] / 2
        if im != 0 or re < 0:
            return Decision(NO, _witness(inst, n, Gaussian(re, im)), _spent(n))
    sub = decide_orthogonal(psi, budget)
    if sub.verdict == NO:
        n = sub.certificate.data["n"]
        value = parse_rational(sub.certificate.data["value"]) / 2
        return Decision(NO, _witness(inst, n, Gaussian(value, 0)), sub.budget_spent)
    if sub.verdict == UNKNOWN:
        return Decision(UNKNOWN, _unknown(inst, "orthogonal strand undecided", budget,
                                          real_part=sub.certificate.to_json()), sub.budget_spent)
    cert = Certificate(UNITARY_REDUCTION, {"instance": inst, "imaginary_zero_through": limit,
                                           "real_part": sub.certificate.to_json()})
    return Decision(YES, cert, sub.budget_spent)


# ---------------------------------------------------------------------------
# peripheral sums: eta and gamma
# ---------------------------------------------------------------------------

def _rou_pairs(members: Sequence[Eigenvalue]) -> tuple[int, list[tuple[int, int]]]:
    turns = [exact_turn(e) for e in members]
    o = 1
    for t in turns:
        o = math.lcm(o, t.denominator)
    return o, [(e.multiplicity, int(t * o)) for e, t in zip(members, turns)]


def rou_sum_sign(pairs: Sequence[tuple[int, int]], o: int, m: int, c: Fraction) -> tuple[int, str]:
    """Sign of ``sum mult * zeta_o^(k m) - c`` (a real number) and a display
    value: the exact rational when the sum is rational, else an interval.
    Exact: the sum is reduced modulo the o-th cyclotomic polynomial and is
    rational exactly when the remainder is constant."""
    coeffs = [0] * o
    for mult, k in pairs:
        coeffs[(k * m) % o] += mult
    _, rem = poly_divmod(IntPoly(coeffs), cyclotomic(o))
    rem = list(rem)
    while rem and rem[-1] == 0:
        rem.pop()
    if len(rem) <= 1:
        value = Fraction(rem[0]) if rem else Fraction(0)
        d = value - c
        return (d > 0) - (d < 0), format_rational(value)
    # irrational, so different from c; refine until the interval excludes c
    prec = 64
    while True:
        old = iv.prec
        iv.prec = prec
        try:
            total = iv.mpf(0)
            for mult, k in pairs:
                total += mult * iv.cos(2 * iv.pi * iv.mpf((k * m) % o) / o)
            lo, hi = mpmath.mpf(total.a), mpmath.mpf(total.b)
            cf = mpmath.mpf(c.numerator) / c.denominator
            text = _num_text(total)
        finally:
            iv.prec = old
        if lo > cf:
            return 1, text
        if hi < cf:
            return -1, text
        prec *= 2


def peripheral_instance(a: Matrix, i: int, c, p: int | None = None, q: int | None = None) -> dict:
    out = {"type": "peripheral", "matrix": a.to_json(), "class": i, "c": format_rational(Fraction(c))}
    if p is not None:
        out["progression"] = [p, q]
    return out


def _peripheral_decide(a, i, c, p, q, sign, budget, report, kind):
    """Shared body of eta_ge (sign +1: values >= c) and gamma_le (sign -1:
    values <= c) along the indices p*n + q, n >= 0."""
    budget = budget or Budget()
    c = Fraction(c)
    report = report or analyze(a)
    members = report.class_members(i)
    inst = peripheral_instance(a, i, c, *( (p, q) if kind == "gamma" else (None, None)))
    if not members:
        value = "inf" if kind == "eta" else "-inf"
        cert = Certificate(EVAL_TABLE, {"instance": inst, "empty_class": True, "value": value, "checked": []})
        return Decision(YES, cert, _spent(0))
    if all(e.unit_order is not None for e in members):
        o, pairs = _rou_pairs(members)
        checked = []
        for n in range(o):
            m = p * n + q
            sgn, text = rou_sum_sign(pairs, o, m, c)
            checked.append(text)
            if sign * sgn < 0:
                return Decision(NO, _witness(inst, n, text, index=m, threshold=format_rational(c)), _spent(m))
        cert = Certificate(EVAL_TABLE, {"instance": inst, "period": o, "checked": checked})
        return Decision(YES, cert, _spent(p * (o - 1) + q))
    const, terms = unit_terms(members, sign)
    const -= sign * c
    limit = budget.max_moment_index
    bits = budget.bits
    turns = [_turn_interval(t, bits) for t in terms]

    def scan(lo_n, hi_n):
        for n in range(lo_n, hi_n + 1):
            m = p * n + q
            if m > limit:
                return None
            total = _iv_of(const)
            for t, th in zip(terms, turns):
                total += _iv_of(t.weight) * iv.cos(2 * iv.pi * (th * m))
            if mpmath.mpf(total.b) < 0:
                value = total * sign + _iv_of(c)
                return n, m, _num_text(value)
        return None

    pre = scan(0, PRESCAN)
    if pre:
        n, m, text = pre
        return Decision(NO, _witness(inst, n, text, index=m, threshold=format_rational(c)), _spent(m))
    res = torus_minimize(terms, const, p, q, budget.relation_bound, budget.minimization_depth, bits)
    if res.certified:
        return Decision(YES, _torus_cert(inst, res, const, terms, p, q, budget=budget.to_json()),
                        _spent(p * PRESCAN + q, relation_bound=budget.relation_bound, boxes=res.boxes))
    hit = scan(PRESCAN + 1, limit)
    if hit:
        n, m, text = hit
        return Decision(NO, _witness(inst, n, text, index=m, threshold=format_rational(c)),
                        _spent(m, relation_bound=budget.relation_bound, boxes=res.boxes))
    return Decision(UNKNOWN, _unknown(inst, "no strand certified within budget", budget),
                    _spent(limit, relation_bound=budget.relation_bound, boxes=res.boxes))


def eta_ge(a: Matrix, i: int, c, budget: Budget | None = None, report: SpectrumReport | None = None) -> Decision:
    """Decide ``eta_i(A) >= c``: the infimum over n >= 0 of the normalized
    power sums ``sum_{lambda in class i} (lambda/|lambda|)^n``; an empty
    class has eta = inf. NO witnesses are indices with a value below c."""
    return _peripheral_decide(a, i, c, 1, 0, 1, budget, report, "eta")


def gamma_le(a: Matrix, i: int, c, p: int = 1, q: int = 1, budget: Budget | None = None,
             report: SpectrumReport | None = None) -> Decision:
    """Decide ``gamma_i(A) <= c``: the supremum of the normalized power sums
    over the indices ``p n + q``, n >= 0; an empty class has gamma = -inf."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be at least 1")
    return _peripheral_decide(a, i, c, p, q, -1, budget, report, "gamma")


# ---------------------------------------------------------------------------
# general classifier
# ---------------------------------------------------------------------------

def classify_general(a: Matrix, epsilon=Fraction(1, 100), p: int = 2, q: int = 1,
                     budget: Budget | None = None, report: SpectrumReport | None = None) -> Decision:
    """Test the three sufficient criteria in the order (iii), (ii), (i):

    (iii) eta_1 < 0, (ii) gamma_1..gamma_k <= 0 and gamma_{k+1} <= -epsilon,
    (i) eta_1..eta_k >= 0 and eta_{k+1} >= epsilon. The first two force a
    negative moment, found by exact enumeration; the third bounds the indices
    that still need an exact check."""
    budget = budget or Budget()
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if a.is_zero():
        raise ValueError("the classifier is defined for nonzero matrices")
    report = report or analyze(a)
    inst = matrix_instance(a)
    inst_opts = {"epsilon": format_rational(epsilon), "progression": [p, q]}
    d = len(report.classes)
    status: dict = {}
    spent = _spent(0, relation_bound=budget.relation_bound)

    def note(dec):
        spent["moment_index"] = max(spent["moment_index"], dec.budget_spent.get("moment_index", 0))
        spent["boxes"] += dec.budget_spent.get("boxes", 0)
        return dec

    def witness_scan(criterion, extra):
        hit = first_negative_trace(a, budget.max_moment_index)
        if hit:
            spent["moment_index"] = max(spent["moment_index"], hit[0])
            return Decision(NO, _witness(inst, *hit, criterion=criterion, **extra), spent, criterion, status)
        status[criterion] = "holds; no witness within max_moment_index"
        return None

    # (iii)
    if d:
        e1 = note(eta_ge(a, 1, 0, budget, report))
        status["iii"] = {YES: "fails", NO: "holds", UNKNOWN: "unknown"}[e1.verdict]
        if e1.verdict == NO:
            dec = witness_scan("iii", {})
            if dec:
                return dec
    else:
        status["iii"] = "fails"
    # (ii): class k+1 must be nonempty
    g0: dict[int, Decision] = {}
    for k in range(d):
        ge = note(gamma_le(a, k + 1, -epsilon, p, q, budget, report))
        if ge.verdict == YES:
            status["ii"] = f"holds with k={k}"
            dec = witness_scan("ii", {"k": k})
            if dec:
                return dec
            break
        g = note(gamma_le(a, k + 1, 0, p, q, budget, report))
        g0[k + 1] = g
        if g.verdict != YES:
            status["ii"] = "fails" if (g.verdict == NO and ge.verdict == NO) else "unknown"
            break
    else:
        status.setdefault("ii", "fails")
    # (i): k may reach d, where eta_{d+1} = inf
    chosen = None
    class_certs = []
    for k in range(d + 1):
        if k < d:
            ee = note(eta_ge(a, k + 1, epsilon, budget, report))
            if ee.verdict == YES:
                chosen = k
                class_certs.append(ee.certificate.to_json())
                break
        else:
            chosen = k
            break
        e0 = note(eta_ge(a, k + 1, 0, budget, report))
        if e0.verdict != YES:
            status["i"] = "fails" if (e0.verdict == NO and ee.verdict == NO) else "unknown"
            break
        class_certs.append(e0.certificate.to_json())
    if chosen is None:
        status.setdefault("i", "fails")
        return Decision(UNKNOWN, _unknown(inst, "no criterion certified", budget, status=status, **inst_opts),
                        spent, None, status)
    status["i"] = f"holds with k={chosen}"
    s = a.size
    if chosen + 2 > d:
        big_n = 0
    else:
        big_n = decay_index(Fraction(s * d) / epsilon, report.classes[chosen].modulus,
                            report.classes[chosen + 1].modulus, budget.bits)
    stop = min(big_n, budget.max_moment_index)
    table = trace_table(a, stop)
    spent["moment_index"] = max(spent["moment_index"], stop)
    for n, v in enumerate(table):
        if v < 0:
            return Decision(NO, _witness(inst, n, v, criterion="i", k=chosen), spent, "i", status)
    if big_n > budget.max_moment_index:
        return Decision(UNKNOWN, _unknown(inst, "check index exceeds max_moment_index", budget, N=big_n,
                                          **inst_opts), spent, "i", status)
    cert = Certificate(EVAL_TABLE, {"instance": inst, "path": "general", "criterion": "i", "k": chosen,
                                    "N": big_n, "checked": [format_rational(v) for v in table],
                                    "class_certificates": class_certs, **inst_opts})
    return Decision(YES, cert, spent, "i", status)


# ---------------------------------------------------------------------------
# linear recurrence sequences
# ---------------------------------------------------------------------------

def lrs_instance(spec: LRSSpec) -> dict:
    return {"type": "lrs", "lrs": spec.to_json()}


def _qpoly_eval(coeffs: Sequence[Fraction], x):
    acc = 0 * x
    for c in reversed(coeffs):
        acc = acc * x + (_iv_of(c) if not isinstance(x, Fraction) else c)
    return acc


def _qpoly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _qpoly_reflect(a):
    return [c if i % 2 == 0 else -c for i, c in enumerate(a)]


def _qpoly_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def lrs_polys(spec: LRSSpec) -> tuple[list[Fraction], list[Fraction], list[Fraction]]:
    """``(chi, chi', h)`` with ``u_n = sum_j h(l_j)/chi'(l_j) * l_j^(n-1)``
    over the simple roots l_j of chi."""
    s = spec.order
    alpha = [Fraction(1)] + [-Fraction(c) for c in spec.coeffs]
    chi = [alpha[s - i] for i in range(s + 1)]  # low degree first
    dchi = [i * chi[i] for i in range(1, s + 1)]
    h_high = []
    for k in range(s):
        h_high.append(sum((alpha[i] * spec.initial[k - i] for i in range(k + 1)), Fraction(0)))
    h = list(reversed(h_high))  # h_high[k] multiplies x^(s-1-k)
    return chi, dchi, h


def _rational_value(e: Eigenvalue) -> Fraction | None:
    if not e.real:
        return None
    v = e.value
    if v.is_point:
        return v.lo
    # a rational root has a denominator dividing the leading coefficient, and
    # two such numbers differ by at least 1/lc^2
    lc = abs(v.defining.lc)
    w = v.refine(Fraction(1, 4 * lc * lc))
    cand = Fraction(round((w.lo + w.hi) / 2 * lc), lc)
    if w.lo <= cand <= w.hi and v.defining(cand) == 0:
        return cand
    return None


def _eig_box(e: Eigenvalue, scale: int, bits: int):
    """Complex interval holding the eigenvalue of A (not of cA)."""
    if e.real:
        v = e.value
        if not v.is_point:
            v = v.refine(max(abs(v.lo), abs(v.hi), Fraction(1)) / (1 << bits))
        return iv.mpc(iv.mpf([_iv_of(v.lo).a, _iv_of(v.hi).b]), 0)
    rs = e.rootset
    rs.ensure_radius(bits)
    dsk = rs.disks[e.root_index]
    r = dsk.radius_upper(bits + 8)
    re = iv.mpf([_iv_of(dsk.center.re - r).a, _iv_of(dsk.center.re + r).b])
    im = iv.mpf([_iv_of(dsk.center.im - r).a, _iv_of(dsk.center.im + r).b])
    return iv.mpc(re, im) / scale


def _coefficient(e: Eigenvalue, scale: int, dchi, h, bits: int):
    """``h(l)/chi'(l)`` as an exact Fraction for rational l, else a complex
    interval excluding a zero denominator."""
    x = _rational_value(e)
    if x is not None:
        return _qpoly_eval(h, x) / _qpoly_eval(dchi, x)
    while True:
        z = _eig_box(e, scale, bits)
        den = _qpoly_eval(dchi, z)
        if not (mpmath.mpf(den.real.a) <= 0 <= mpmath.mpf(den.real.b)
                and mpmath.mpf(den.imag.a) <= 0 <= mpmath.mpf(den.imag.b)):
            return _qpoly_eval(h, z) / den
        bits *= 2


def _real_sign(x) -> int:
    """Sign of a real value given exactly or as a (complex) interval; 0 when
    the interval straddles zero."""
    if isinstance(x, Fraction):
        return (x > 0) - (x < 0)
    re = x.real if hasattr(x, "imag") else x
    if mpmath.mpf(re.a) > 0:
        return 1
    if mpmath.mpf(re.b) < 0:
        return -1
    return 0


def _abs_upper(x):
    if isinstance(x, Fraction):
        return abs(x)
    return mpmath.mpf(abs(x).b)


def _is_root(g_coeffs: Sequence[Fraction], alpha: AlgebraicReal) -> bool:
    """Exact test g(alpha) = 0 for a rational polynomial g."""
    g_int, _ = IntPoly.from_rationals(g_coeffs)
    if g_int.is_zero():
        return True
    if alpha.is_point:
        return g_int.sign_at(alpha.lo) == 0
    common = poly_gcd(g_int, alpha.defining)
    if common.degree < 1:
        return False
    return count_roots(sturm_sequence(common), alpha.lo, alpha.hi) > 0


def _lower_iv(x):
    """Point interval at a positive lower bound of the real value x."""
    if isinstance(x, Fraction):
        return _iv_of(x)
    re = x.real if hasattr(x, "imag") else x
    return iv.mpf(re.a)


def _parity_weight(members, parity, scale, dchi, h, bits):
    """``sum_j c_j l_j^parity`` over the members of one real class."""
    total = Fraction(0)
    for e in members:
        cj = _coefficient(e, scale, dchi, h, bits)
        if parity:
            lam = _rational_value(e)
            if lam is None:
                lam = _eig_box(e, scale, bits).real
            cj = cj * lam if isinstance(cj, Fraction) and isinstance(lam, Fraction) else _as_iv(cj) * _as_iv(lam)
        total = total + cj if isinstance(total, Fraction) and isinstance(cj, Fraction) else _as_iv(total) + _as_iv(cj)
    return total


def _as_iv(x):
    return _iv_of(x) if isinstance(x, (int, Fraction)) else x


def _scaled_terms(spec: LRSSpec):
    """Yield ``(n, D c^n u_n)`` as integers, where c clears the coefficient
    denominators and D the initial ones; the signs are those of u_n."""
    c = math.lcm(*(Fraction(a).denominator for a in spec.coeffs))
    big_d = math.lcm(*(Fraction(u).denominator for u in spec.initial))
    coeffs = [int(Fraction(a) * c ** (i + 1)) for i, a in enumerate(spec.coeffs)]
    window = [int(Fraction(u) * big_d * c ** n) for n, u in enumerate(spec.initial, start=1)]
    yield from enumerate(window, start=1)
    n = spec.order + 1
    while True:
        acc = sum(a * window[-1 - i] for i, a in enumerate(coeffs))
        window.append(acc)
        window.pop(0)
        yield n, acc
        n += 1


def _lrs_first_negative(spec: LRSSpec, stop: int):
    for n, v in _scaled_terms(spec):
        if n > stop:
            return None
        if v < 0:
            return n, terms(spec, n)[-1]


def _lrs_table_decision(spec, inst, big_n, budget, cert_data, spent_extra=None):
    stop = min(max(big_n, spec.order), budget.max_moment_index)
    vals = terms(spec, stop)
    for n, v in enumerate(vals, start=1):
        if v < 0:
            return Decision(NO, _witness(inst, n, v), _spent(n))
    if big_n > budget.max_moment_index:
        return Decision(UNKNOWN, _unknown(inst, "decay index exceeds max_moment_index", budget, N=big_n),
                        _spent(stop))
    data = {"instance": inst, "N": stop, "checked": [format_rational(v) for v in vals]}
    data.update(cert_data)
    return Decision(YES, Certificate(EVAL_TABLE, data), _spent(stop, **(spent_extra or {})))


def _lrs_scan_or_unknown(spec, inst, budget, reason):
    hit = _lrs_first_negative(spec, budget.max_moment_index)
    if hit:
        return Decision(NO, _witness(inst, *hit), _spent(hit[0]))
    return Decision(UNKNOWN, _unknown(inst, reason, budget), _spent(budget.max_moment_index))


def decide_lrs(spec: LRSSpec, budget: Budget | None = None) -> Decision:
    """Positivity of ``u_n`` for n >= 1 (real and nonnegative for Gaussian
    sequences).

    The sequence is minimized, then its characteristic roots are classified
    through the companion matrix. With simple roots
    ``u_n = sum_j c_j l_j^(n-1)`` where ``c_j = h(l_j)/chi'(l_j)``; the
    dominant, real and unit-modulus cases use that expansion, anything else
    falls back to enumeration."""
    budget = budget or Budget()
    inst = lrs_instance(spec)
    if spec.ring == GAUSSIAN:
        s = spec.order
        vals = terms(spec, 4 * s)
        for n, v in enumerate(vals, start=1):
            v = Gaussian.coerce(v)
            if v.im != 0 or v.re < 0:
                return Decision(NO, _witness(inst, n, v), _spent(n))
        real = [Gaussian.coerce(v).re for v in vals]
        rec = minimal_recurrence(real)
        if not rec:
            return Decision(YES, Certificate(EVAL_TABLE, {"instance": inst, "zero_sequence": True,
                                                          "checked": [format_rational(v) for v in real]}),
                            _spent(len(real)))
        spec_r = LRSSpec(tuple(rec), tuple(real[: len(rec)]), RATIONAL)
        dec = decide_lrs(spec_r, budget)
        if dec.certificate.kind != NEGATIVE_MOMENT:
            dec.certificate.data["gaussian_instance"] = inst
            dec.certificate.data["imaginary_zero_through"] = 4 * s
        else:
            dec.certificate.data["instance"] = inst
        return dec
    if spec.ring != RATIONAL:
        raise ValueError("decide_lrs handles rational or Gaussian-rational sequences")
    small = minimize_lrs(spec)
    if small is None:
        vals = terms(spec, 2 * spec.order)
        cert = Certificate(EVAL_TABLE, {"instance": inst, "zero_sequence": True,
                                        "checked": [format_rational(v) for v in vals]})
        return Decision(YES, cert, _spent(len(vals)))
    s = small.order
    a, _, _ = companion(small)
    report = analyze(a)
    bits = budget.bits
    chi, dchi, h = lrs_polys(small)
    simple = all(e.multiplicity == 1 for e in report.eigenvalues) and report.zero_multiplicity <= 1
    if report.nilpotent:
        return _lrs_table_decision(spec, inst, s, budget, {"path": "nilpotent"})
    if not simple:
        return _lrs_scan_or_unknown(spec, inst, budget, "repeated characteristic roots")
    scale = report.scale
    eigs = report.eigenvalues
    classes = report.classes

    if report.unique_dominant:
        top = eigs[classes[0].members[0]]
        c1 = _coefficient(top, scale, dchi, h, bits)
        while _real_sign(c1) == 0:
            bits *= 2
            c1 = _coefficient(top, scale, dchi, h, bits)
        if top.sign < 0 or _real_sign(c1) < 0:
            return _lrs_scan_or_unknown(spec, inst, budget, "no negative term within max_moment_index")
        if len(classes) == 1:
            big_n = 1
        else:
            tail = sum((_abs_upper(_coefficient(e, scale, dchi, h, bits)) for cl in classes[1:]
                        for e in (eigs[j] for j in cl.members)), mpmath.mpf(0))
            ratio = iv.mpf(tail) / _lower_iv(c1)
            big_n = decay_index(ratio, top.value, classes[1].modulus, bits) + 1
        return _lrs_table_decision(spec, inst, big_n, budget, {"path": "dominant"})

    if report.all_real:
        big_n = 0
        for parity in (0, 1):
            weights = []
            for cl in classes:
                members = [eigs[j] for j in cl.members]
                if len(members) == 2:
                    g = _qpoly_add(_qpoly_mul(h, _qpoly_reflect(dchi)),
                                   [x * (-1) ** parity for x in _qpoly_mul(_qpoly_reflect(h), dchi)])
                    if _is_root(g, cl.modulus):
                        weights.append(None)
                        continue
                weights.append(_parity_weight(members, parity, scale, dchi, h, bits))
            live = [i for i, w in enumerate(weights) if w is not None]
            if not live:
                continue
            t0 = live[0]
            w0 = weights[t0]
            while _real_sign(w0) == 0:
                bits *= 2
                w0 = _parity_weight([eigs[j] for j in classes[t0].members], parity, scale, dchi, h, bits)
            if _real_sign(w0) < 0:
                return _lrs_scan_or_unknown(spec, inst, budget, "no negative term within max_moment_index")
            if len(live) == 1:
                continue
            tail = sum((_abs_upper(weights[i]) for i in live[1:]), mpmath.mpf(0))
            ratio = iv.mpf(tail) / _lower_iv(w0)
            # the parity subsequence has base r^2: halve the logarithmic rate
            t_bound = decay_index(ratio, classes[t0].modulus, classes[live[1]].modulus, bits)
            t_bound = (t_bound + 1) // 2
            big_n = max(big_n, 2 * t_bound + parity + 1)
        return _lrs_table_decision(spec, inst, big_n, budget, {"path": "real"})

    if report.all_roots_of_unity:
        o = report.group_order
        if o + spec.order <= budget.max_moment_index:
            vals = terms(spec, o + spec.order)
            # the shifted sequence obeys the same recurrence, so agreeing on
            # the first `order` terms makes it equal: period o
            if vals[o:] == vals[: spec.order]:
                for n, v in enumerate(vals[:o], start=1):
                    if v < 0:
                        return Decision(NO, _witness(inst, n, v), _spent(n))
                cert = Certificate(EVAL_TABLE, {"instance": inst, "path": "periodic", "period": o,
                                                "checked": [format_rational(v) for v in vals]})
                return Decision(YES, cert, _spent(o + spec.order))

    if report.all_unit_modulus:
        pre = _lrs_first_negative(spec, min(PRESCAN, budget.max_moment_index))
        if pre:
            return Decision(NO, _witness(inst, *pre), _spent(pre[0]))
        const = Fraction(0)
        uterms = []
        for e in eigs:
            cj = _coefficient(e, scale, dchi, h, bits)
            if e.real:
                if e.sign > 0:
                    const += cj
                else:
                    uterms.append(UnitTerm(cj, turn=Fraction(1, 2)))
                continue
            if e.approx.imag < 0:
                continue
            t = exact_turn(e)
            base = {"turn": t} if t is not None else {"rootset": e.rootset, "index": e.root_index}
            # 2 Re(c z) = 2 Re(c) Re(z) + 2 Im(c) Re(i z)
            uterms.append(UnitTerm(2 * cj.real, phase=Fraction(0), **base))
            uterms.append(UnitTerm(2 * cj.imag, phase=Fraction(1, 4), **base))
        res = torus_minimize(uterms, const, 1, 0, budget.relation_bound, budget.minimization_depth, bits)
        if res.certified:
            cert = _torus_cert(inst, res, const, uterms, 1, 0, shift="n-1", budget=budget.to_json())
            return Decision(YES, cert, _spent(PRESCAN, relation_bound=budget.relation_bound, boxes=res.boxes))
        return _lrs_scan_or_unknown(spec, inst, budget, "torus bound not certified")

    return _lrs_scan_or_unknown(spec, inst, budget, "spectrum outside the decidable cases")


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

MODES = ("auto", "dominant", "real", "orthogonal", "unitary", "general")


def decide_matrix(a: Matrix, mode: str = "auto", budget: Budget | None = None, epsilon=Fraction(1, 100),
                  p: int = 2, q: int = 1) -> Decision:
    """Run one decider on a rational matrix. ``auto`` tries finite group,
    dominant, real spectrum, orthogonal and finally the general classifier."""
    budget = budget or Budget()
    if mode == "unitary":
        return decide_unitary(a, budget)
    if not all(isinstance(x, Fraction) or isinstance(x, int) for x in a.entries()):
        a = a.map(lambda z: z.re if isinstance(z, Gaussian) and z.im == 0 else z)
        if not all(isinstance(x, (Fraction, int)) for x in a.entries()):
            if mode == "auto":
                return decide_unitary(a, budget)
            raise ValueError("matrix has non-real entries")
    a = a.map(Fraction)
    if mode == "dominant":
        return decide_dominant(a, budget=budget)
    if mode == "real":
        return decide_real_spectrum(a, budget)
    if mode == "orthogonal":
        return decide_orthogonal(a, budget)
    if mode == "general":
        return classify_general(a, epsilon, p, q, budget)
    if mode != "auto":
        raise ValueError(f"unknown mode {mode!r}")
    report = analyze(a)
    if report.nilpotent:
        return decide_dominant(a, budget=budget, report=report)
    if report.all_roots_of_unity and a.is_orthogonal():
        return decide_orthogonal(a, budget, report)
    if report.unique_dominant:
        return decide_dominant(a, budget=budget, report=report)
    if report.all_real:
        return decide_real_spectrum(a, budget, report)
    if a.is_orthogonal():
        return decide_orthogonal(a, budget, report)
    return classify_general(a, epsilon, p, q, budget, report)
