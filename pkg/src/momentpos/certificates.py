"""Independent re-checking of emitted certificates.

:func:`verify` takes a decision or a bare certificate (as JSON) and redoes the
claimed computation with exact arithmetic. Tables of moments are recomputed
from plain matrix powers, tail estimates are re-established with rational
enclosures, and torus bounds are replayed deterministically with the budget
recorded in the certificate. Certificates for the polynomial and gadget
identities are checked the same way.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import iv

from . import deciders as dc
from .commpoly import CommPoly
from .exactnum import AlgebraicReal, Gaussian, IntPoly, format_rational, parse_rational
from .freepoly import NCPoly, isolation_matrices, nc_eval, pencil_moment
from .lrs import GAUSSIAN, RATIONAL, LRSSpec, companion, from_moments, term, terms
from .matrix import LinearFunctional, Matrix, char_poly, moment
from .reductions import (
    MortalityInstance,
    build_gadget_N,
    comm_moment_identity,
    lift_mortality,
    lifted_trace,
    mortality_search,
    ordered_product,
    trace_gadget_check,
)
from .spectra import analyze

MAX_REFINE_BITS = 4096


class CertificateError(Exception):
    pass


@dataclass
class Verification:
    ok: bool
    kind: str
    reason: str = ""

    def to_json(self) -> dict:
        return {"ok": self.ok, "kind": self.kind, "reason": self.reason}


def _require(cond, message: str):
    if not cond:
        raise CertificateError(message)


# ---------------------------------------------------------------------------
# instances
# ---------------------------------------------------------------------------

def _matrix_of(inst: dict) -> Matrix:
    return Matrix.from_json(inst["matrix"])


def _functional_of(inst: dict) -> LinearFunctional:
    if "functional" in inst:
        return LinearFunctional.from_json(inst["functional"])
    return LinearFunctional.trace()


def _trace_power(a: Matrix, n: int) -> Fraction:
    return Fraction((a ** n).trace())


def _check_table(a: Matrix, checked, start: int = 0):
    """Each listed value must equal tr(A^n) and be nonnegative."""
    power = a ** start
    for n, text in enumerate(checked, start=start):
        v = parse_rational(text)
        _require(v >= 0, f"table entry {n} is negative")
        _require(Fraction(power.trace()) == v, f"table entry {n} does not match tr(A^{n})")
        power = power * a


def _lower(x: AlgebraicReal, width: Fraction) -> Fraction:
    return x.refine(width).lo


def _upper(x: AlgebraicReal, width: Fraction) -> Fraction:
    return x.refine(width).hi


def _power_dominates(top: AlgebraicReal, second: AlgebraicReal, ratio: Fraction, n: int) -> bool:
    """``top^n > ratio * second^n``, established with rational enclosures."""
    bits = 32
    while bits <= MAX_REFINE_BITS:
        w = Fraction(1, 1 << bits)
        lo = _lower(top, w)
        hi = _upper(second, w)
        if lo > 0 and hi >= 0 and lo ** n > ratio * hi ** n:
            return True
        bits *= 2
    return False


# ---------------------------------------------------------------------------
# negative moment witnesses
# ---------------------------------------------------------------------------

def _peripheral_value(inst: dict, m: int, bits: int = 160):
    """Sign of the class sum minus c at index m: exact for roots of unity,
    certified interval otherwise."""
    a = _matrix_of(inst)
    c = parse_rational(inst["c"])
    members = analyze(a).class_members(int(inst["class"]))
    _require(members, "witness for an empty class")
    if all(e.unit_order is not None for e in members):
        o, pairs = dc._rou_pairs(members)
        return dc.rou_sum_sign(pairs, o, m, c)[0]
    const, uterms = dc.unit_terms(members)
    old = iv.prec
    iv.prec = bits
    try:
        total = dc._iv_of(const - c)
        for t in uterms:
            th = dc._turn_interval(t, bits)
            total += dc._iv_of(t.weight) * iv.cos(2 * iv.pi * (th * m))
        if mpmath.mpf(total.a) > 0:
            return 1
        if mpmath.mpf(total.b) < 0:
            return -1
        return 0
    finally:
        iv.prec = old


def _verify_witness(cert: dict):
    inst = cert["instance"]
    n = int(cert["n"])
    kind = inst["type"]
    if kind == "matrix":
        a = _matrix_of(inst)
        v = moment(a, _functional_of(inst), n)
        _require(v == parse_rational(cert["value"]), "witness value does not match the moment")
        _require(v < 0, "witness value is not negative")
    elif kind == "unitary":
        u = Matrix.from_json(inst["matrix"]).map(Gaussian.coerce)
        v = Gaussian.coerce((u ** n).trace())
        _require(str(v) == cert["value"], "witness value does not match tr(U^n)")
        _require(v.im != 0 or v.re < 0, "tr(U^n) is real and nonnegative")
    elif kind == "peripheral":
        p, q = inst.get("progression", [1, 0])
        m = p * n + q
        _require(int(cert.get("index", m)) == m, "witness index does not match the progression")
        sgn = _peripheral_value(inst, m)
        if "progression" in inst:
            _require(sgn > 0, "class sum is not above the threshold")
        else:
            _require(sgn < 0, "class sum is not below the threshold")
    elif kind == "lrs":
        spec = LRSSpec.from_json(inst["lrs"])
        _require(n >= 1, "terms are indexed from 1")
        v = term(spec, n)
        if spec.ring == GAUSSIAN:
            v = Gaussian.coerce(v)
            _require(str(v) == cert["value"], "witness value does not match the term")
            _require(v.im != 0 or v.re < 0, "term is real and nonnegative")
        else:
            _require(v == parse_rational(cert["value"]), "witness value does not match the term")
            _require(v < 0, "term is not negative")
    else:
        raise CertificateError(f"unknown instance type {kind!r}")


# ---------------------------------------------------------------------------
# yes certificates
# ---------------------------------------------------------------------------

def _verify_dominance(cert: dict):
    inst = cert["instance"]
    a = _matrix_of(inst)
    s = a.size
    big_n = int(cert["N"])
    if cert.get("nilpotent"):
        f, _ = char_poly(a)
        _require(f == IntPoly([0] * s + [1]), "characteristic polynomial is not x^s")
        _check_table(a, cert["checked"])
        return
    report = analyze(a)
    _require(report.unique_dominant, "no unique dominant eigenvalue")
    lam = report.eigenvalues[report.classes[0].members[0]]
    k = lam.multiplicity
    _require(lam.sign > 0, "dominant eigenvalue is not positive")
    _require(int(cert["multiplicity"]) == k, "multiplicity mismatch")
    _require(len(cert["checked"]) == big_n + 1, "table does not cover 0..N")
    _check_table(a, cert["checked"])
    if len(report.classes) > 1:
        # |tr(A^n) - k l1^n| <= (s-k)|l2|^n for n >= 1
        ratio = Fraction(s - k, k)
        _require(_power_dominates(lam.value, report.classes[1].modulus, ratio, big_n + 1),
                 "decay index too small")


def _verify_real_table(cert: dict):
    inst = cert["instance"]
    a = _matrix_of(inst)
    report = analyze(a)
    _require(report.all_real, "spectrum is not real")
    weights = dc.class_weights(report)
    _require(list(cert["weights"]) == weights, "class weights mismatch")
    big_n = int(cert["N"])
    _require(len(cert["checked"]) == big_n + 1, "table does not cover 0..N")
    _check_table(a, cert["checked"])
    nonzero = [i for i, e in enumerate(weights) if e]
    if not nonzero:
        return
    top = nonzero[0]
    _require(weights[top] > 0, "leading odd weight is negative")
    if len(nonzero) > 1:
        tail = sum(abs(weights[i]) for i in nonzero[1:])
        _require(_power_dominates(report.classes[top].modulus, report.classes[nonzero[1]].modulus,
                                  Fraction(tail, weights[top]), big_n + 1), "decay index too small")


def _verify_general_table(cert: dict):
    inst = cert["instance"]
    a = _matrix_of(inst)
    report = analyze(a)
    d = len(report.classes)
    k = int(cert["k"])
    eps = parse_rational(cert["epsilon"])
    _require(eps > 0, "epsilon must be positive")
    subs = cert["class_certificates"]
    _require(len(subs) == min(k + 1, d), "missing class certificates")
    for j, sub in enumerate(subs, start=1):
        sinst = sub["instance"]
        _require(sinst.get("type") == "peripheral" and sinst["matrix"] == inst["matrix"],
                 "class certificate is for another matrix")
        _require(int(sinst["class"]) == j and "progression" not in sinst, "class certificate index mismatch")
        want = eps if j == k + 1 else Fraction(0)
        _require(parse_rational(sinst["c"]) == want, "class certificate threshold mismatch")
        _verify_cert(sub)
    big_n = int(cert["N"])
    _require(len(cert["checked"]) == big_n + 1, "table does not cover 0..N")
    _check_table(a, cert["checked"])
    if k + 2 <= d:
        ratio = Fraction(a.size * d) / eps
        _require(_power_dominates(report.classes[k].modulus, report.classes[k + 1].modulus, ratio, big_n + 1),
                 "check index too small")


def _verify_peripheral_table(cert: dict):
    inst = cert["instance"]
    a = _matrix_of(inst)
    c = parse_rational(inst["c"])
    members = analyze(a).class_members(int(inst["class"]))
    gamma = "progression" in inst
    if cert.get("empty_class"):
        _require(not members, "class is not empty")
        return
    _require(members and all(e.unit_order is not None for e in members), "class is not made of roots of unity")
    o, pairs = dc._rou_pairs(members)
    _require(int(cert["period"]) == o, "period mismatch")
    p, q = inst.get("progression", [1, 0])
    for n in range(o):
        sgn, _ = dc.rou_sum_sign(pairs, o, p * n + q, c)
        _require(sgn <= 0 if gamma else sgn >= 0, f"class sum violates the threshold at n={n}")


def _verify_lrs_table(cert: dict):
    inst = cert["instance"]
    spec = LRSSpec.from_json(inst["lrs"])
    s = spec.order
    if cert.get("zero_sequence"):
        # s consecutive zeros force the whole sequence to vanish
        vals = terms(spec, s)
        _require(all(v == 0 for v in vals), "initial terms are not zero")
        return
    if cert.get("path") == "periodic":
        o = int(cert["period"])
        vals = terms(spec, o + s)
        _require([format_rational(v) for v in vals] == list(cert["checked"]), "table does not match the terms")
        _require(vals[o:] == vals[:s], "sequence is not periodic")
        _require(all(v >= 0 for v in vals[:o]), "table has a negative term")
        return
    big_n = int(cert["N"])
    vals = terms(spec, big_n)
    _require([format_rational(v) for v in vals] == list(cert["checked"]), "table does not match the terms")
    _require(all(v >= 0 for v in vals), "table has a negative term")
    replay = dc.decide_lrs(spec)
    _require(replay.verdict == dc.YES and replay.certificate.data.get("N") == big_n,
             "replayed decay bound differs")


def _verify_gaussian_wrapper(cert: dict):
    g = LRSSpec.from_json(cert["gaussian_instance"]["lrs"])
    s = g.order
    limit = int(cert["imaginary_zero_through"])
    _require(limit >= 4 * s, "imaginary part checked on too few terms")
    vals = [Gaussian.coerce(v) for v in terms(g, limit)]
    _require(all(v.im == 0 for v in vals), "imaginary part is not zero")
    inner = dict(cert)
    inner.pop("gaussian_instance")
    inner.pop("imaginary_zero_through")
    if cert.get("zero_sequence"):
        _require(all(v.re == 0 for v in vals[:s]), "initial terms are not zero")
        return
    real = LRSSpec.from_json(cert["instance"]["lrs"])
    # real parts and the real recurrence both have order <= 2s, so 4s terms pin them
    _require(real.order <= 2 * s, "real recurrence order too large")
    _require([v.re for v in vals] == terms(real, limit), "real parts do not match the real recurrence")
    _verify_cert(inner)


def _verify_finite_group(cert: dict):
    a = _matrix_of(cert["instance"])
    o = int(cert["order"])
    _require(o >= 1 and (a ** o).is_identity(), "A^o is not the identity")
    _require(len(cert["traces"]) == o, "trace table does not cover one period")
    _check_table(a, cert["traces"])


def _verify_torus(cert: dict):
    inst = cert["instance"]
    _require(cert["lower_bound"] != "none", "no lower bound recorded")
    budget = dc.Budget.from_json(cert.get("budget"))
    kind = inst["type"]
    if kind == "matrix":
        a = _matrix_of(inst)
        _require(a.is_orthogonal(), "matrix is not orthogonal")
        replay = dc.decide_orthogonal(a, budget, finite_group=False)
        # first moments must agree with a nonnegative minimum
        power = Matrix.identity(a.size)
        for n in range(dc.PRESCAN):
            _require(power.trace() >= 0, f"negative moment at n={n}")
            power = power * a
    elif kind == "peripheral":
        a = _matrix_of(inst)
        c = parse_rational(inst["c"])
        i = int(inst["class"])
        if "progression" in inst:
            p, q = inst["progression"]
            replay = dc.gamma_le(a, i, c, p, q, budget)
        else:
            replay = dc.eta_ge(a, i, c, budget)
    elif kind == "lrs":
        spec = LRSSpec.from_json(inst["lrs"])
        replay = dc.decide_lrs(spec, budget)
        vals = terms(spec, dc.PRESCAN)
        _require(all(v >= 0 for v in vals), "negative early term")
    else:
        raise CertificateError(f"unknown instance type {kind!r}")
    _require(replay.verdict == dc.YES and replay.certificate.kind == dc.TORUS_LOWER_BOUND,
             "replay did not certify a lower bound")
    got = replay.certificate.to_json()
    for key in ("lower_bound", "relations", "smith_diagonal", "cosets", "terms", "constant"):
        _require(got.get(key) == cert.get(key), f"replayed {key} differs")
    _require(not cert["lower_bound"].startswith("-"), "lower bound is negative")


def _verify_unitary(cert: dict):
    u = Matrix.from_json(cert["instance"]["matrix"]).map(Gaussian.coerce)
    _require(u.is_unitary(), "matrix is not unitary")
    s = u.size
    limit = int(cert["imaginary_zero_through"])
    _require(limit >= 2 * s, "imaginary part checked on too few moments")
    power = Matrix.identity(s, Gaussian(1))
    for n in range(limit + 1):
        t = Gaussian.coerce(power.trace())
        _require(t.im == 0 and t.re >= 0, f"tr(U^{n}) is not real and nonnegative")
        power = power * u
    sub = cert["real_part"]
    psi = dc.psi_embed(u)
    _require(Matrix.from_json(sub["instance"]["matrix"]) == psi, "real part certificate is for another matrix")
    _verify_cert(sub)


def _verify_eval_table(cert: dict):
    if "gaussian_instance" in cert:
        return _verify_gaussian_wrapper(cert)
    inst = cert["instance"]
    kind = inst["type"]
    if kind == "peripheral":
        return _verify_peripheral_table(cert)
    if kind == "lrs":
        return _verify_lrs_table(cert)
    path = cert.get("path")
    if path == "real_spectrum":
        return _verify_real_table(cert)
    if path == "general":
        return _verify_general_table(cert)
    raise CertificateError(f"unknown evaluation table path {path!r}")


# ---------------------------------------------------------------------------
# polynomial and gadget certificates
# ---------------------------------------------------------------------------

def _int_matrix(rows) -> Matrix:
    return Matrix.integer(rows)


def _verify_polya_nonneg(cert: dict):
    p = NCPoly.from_json(cert["poly"])
    _require(all(c >= 0 for c in p.terms.values()), "polynomial has a negative coefficient")


def _verify_polya_witness(cert: dict):
    p = NCPoly.from_json(cert["poly"])
    word = tuple(cert["word"])
    coeff = int(cert["coeff"])
    _require(p.coefficient(word) == coeff and coeff < 0, "coefficient mismatch")
    mats = [_int_matrix(m) for m in cert["matrices"]]
    _require(all(x >= 0 for m in mats for x in m.entries()), "witness matrices are not nonnegative")
    i, j = cert["entry"]
    _require((i, j) == (1, len(word) + 1), "entry is not (1, l+1)")
    value = nc_eval(p, mats)[i - 1, j - 1]
    _require(value == coeff, "evaluation does not expose the coefficient")


def _verify_lrs_bridge(cert: dict):
    spec = LRSSpec.from_json(cert["lrs"])
    s = spec.order
    upto = int(cert["upto"])
    vals = terms(spec, upto)
    _require([str(x) for x in vals] == list(cert["terms"]), "recorded terms differ")
    if spec.ring not in (RATIONAL, GAUSSIAN):
        # no companion matrix over a polynomial ring; the terms are the claim
        return
    a, v, w = companion(spec)
    power = Matrix.identity(s, a[0, 0] ** 0)
    for n in range(s, upto + 1):
        aw = power.apply(list(w))
        got = sum((x * y for x, y in zip(v, aw)), v[0] - v[0])
        _require(got == vals[n - 1], f"companion bridge fails at n={n}")
        power = power * a


def _verify_moment_bridge(cert: dict):
    a = Matrix.from_json(cert["matrix"])
    phi = LinearFunctional.from_json(cert.get("functional", {"kind": "trace"}))
    spec = LRSSpec.from_json(cert["lrs"])
    _require(spec == from_moments(a, phi), "recurrence differs from the Cayley-Hamilton bridge")
    upto = int(cert["upto"])
    vals = terms(spec, upto)
    for n in range(1, upto + 1):
        _require(vals[n - 1] == phi(a ** n), f"moment bridge fails at n={n}")


def _verify_pencil(cert: dict):
    mats = [_int_matrix(m) for m in cert["matrices"]]
    n = int(cert["n"])
    p = NCPoly.from_json(cert["poly"])
    _require(p == pencil_moment(mats, n), "pencil polynomial differs")
    d = len(mats)
    for word in itertools.product(range(1, d + 1), repeat=n):
        prod = Matrix.identity(mats[0].size, 1)
        for k in word:
            prod = prod * mats[k - 1]
        _require(p.coefficient(word) == prod.trace(), f"coefficient of {word} differs")


def _verify_gadget_trace(cert: dict):
    x = _int_matrix(cert["X"])
    a = int(cert["a"])
    value = int(cert["value"])
    n = build_gadget_N(x.size)
    y_top = x.kron(x)
    size = y_top.size
    rows = [list(r) + [0] for r in y_top.rows] + [[0] * size + [a]]
    _require((Matrix(rows) * n).trace() == value, "tr(YN) differs")
    _require(value == a + sum(v * v for v in x.entries()), "identity a + sum X_ij^2 fails")


def _verify_comm_identity(cert: dict):
    inst = MortalityInstance.from_json(cert["instance"])
    n_matrix = _int_matrix(cert["N"])
    n = int(cert["n"])
    poly, report = comm_moment_identity(inst, n_matrix, n)
    _require(report["equal"], "the two sides differ")
    _require(poly == CommPoly.from_json(cert["poly"]), "recorded polynomial differs")
    _require(all(t["c"] >= 1 for t in report["terms"]), "coefficient below 1")


def _verify_lifted(cert: dict):
    inst = MortalityInstance.from_json(cert["instance"])
    bound = int(cert["bound"])
    mortal = cert["mortal"]
    found = mortality_search(inst, bound)
    _require((list(found) if found else None) == mortal, "mortality search result differs")
    if mortal is not None:
        _require(ordered_product(inst.matrices, mortal).is_zero(), "product does not vanish")
        _require(lifted_trace(inst, list(mortal) + [1]) < 0, "lifted trace is not negative")
    negative = cert["negative_lifted"]
    if negative is not None:
        _require(lifted_trace(inst, negative) < 0, "lifted trace is not negative")
        _require(ordered_product(inst.matrices, negative[:-1]).is_zero(), "negative trace without vanishing product")
    _require((mortal is None) == (negative is None), "mortality and lifted criterion disagree")


def _verify_gadget_report(cert: dict):
    inst = MortalityInstance.from_json(cert["instance"])

    def rows(m):
        return [[str(x) for x in r] for r in m.rows]
    _require(cert["N"] == rows(build_gadget_N(inst.s)), "gadget N differs")
    _require(cert["lift"] == [rows(b) for b in lift_mortality(inst)], "lifted matrices differ")
    sub = cert["lifted_check"]
    _require(sub["instance"] == cert["instance"], "lifted check is for another instance")
    _verify_cert(sub)
    for c in cert.get("comm_moment_identity", []):
        _require(c["instance"] == cert["instance"], "identity is for another instance")
        _verify_cert(c)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

_CHECKERS = {
    dc.NEGATIVE_MOMENT: _verify_witness,
    dc.DOMINANCE_BOUND: _verify_dominance,
    dc.FINITE_GROUP: _verify_finite_group,
    dc.TORUS_LOWER_BOUND: _verify_torus,
    dc.EVAL_TABLE: _verify_eval_table,
    dc.UNITARY_REDUCTION: _verify_unitary,
    "polya_all_nonneg": _verify_polya_nonneg,
    "polya_witness": _verify_polya_witness,
    "lrs_bridge": _verify_lrs_bridge,
    "moment_bridge": _verify_moment_bridge,
    "pencil_identity": _verify_pencil,
    "gadget_trace": _verify_gadget_trace,
    "comm_moment_identity": _verify_comm_identity,
    "lifted_mortality": _verify_lifted,
    "gadget_report": _verify_gadget_report,
}

_YES_KINDS = {dc.DOMINANCE_BOUND, dc.FINITE_GROUP, dc.TORUS_LOWER_BOUND, dc.EVAL_TABLE, dc.UNITARY_REDUCTION}


def _verify_cert(cert: dict):
    kind = cert.get("kind")
    if kind == dc.BUDGET_EXHAUSTED:
        dc.Budget.from_json(cert.get("budget"))
        return
    checker = _CHECKERS.get(kind)
    if checker is None:
        raise CertificateError(f"unknown certificate kind {kind!r}")
    checker(cert)


def verify(obj: dict) -> Verification:
    """Re-check a decision or a bare certificate. Never raises on bad input;
    failures are reported in the result."""
    try:
        if "verdict" in obj:
            cert = obj["certificate"]
            kind = cert.get("kind")
            verdict = obj["verdict"]
            if verdict == dc.NO:
                _require(kind == dc.NEGATIVE_MOMENT, "NO needs a negative moment witness")
            elif verdict == dc.YES:
                _require(kind in _YES_KINDS, f"YES cannot rest on {kind!r}")
            elif verdict == dc.UNKNOWN:
                _require(kind == dc.BUDGET_EXHAUSTED, "UNKNOWN must record the exhausted budget")
            else:
                raise CertificateError(f"unknown verdict {verdict!r}")
        else:
            cert = obj
            kind = cert.get("kind")
        _verify_cert(cert)
        return Verification(True, str(kind))
    except CertificateError as exc:
        return Verification(False, str(obj.get("kind") or obj.get("certificate", {}).get("kind")), str(exc))
    except (KeyError, TypeError, ValueError, ArithmeticError) as exc:
        return Verification(False, "malformed", f"{type(exc).__name__}: {exc}")


# ---------------------------------------------------------------------------
# emitters for the identity certificates
# ---------------------------------------------------------------------------

def lrs_bridge_certificate(spec: LRSSpec, upto: int) -> dict:
    return {"kind": "lrs_bridge", "lrs": spec.to_json(), "upto": upto,
            "terms": [str(x) for x in terms(spec, upto)]}


def moment_bridge_certificate(a: Matrix, phi: LinearFunctional | None = None, upto: int | None = None) -> dict:
    phi = phi or LinearFunctional.trace()
    spec = from_moments(a, phi)
    return {"kind": "moment_bridge", "matrix": a.to_json(), "functional": phi.to_json(),
            "lrs": spec.to_json(), "upto": upto if upto is not None else 4 * a.size}


def pencil_certificate(mats, n: int) -> dict:
    return {"kind": "pencil_identity", "matrices": [[[str(x) for x in r] for r in m.rows] for m in mats],
            "n": n, "poly": pencil_moment(mats, n).to_json()}


def gadget_trace_certificate(x: Matrix, a: int) -> dict:
    return {"kind": "gadget_trace", "X": [[str(v) for v in r] for r in x.rows], "a": str(a),
            "value": str(trace_gadget_check(x, a))}


def comm_identity_certificate(inst: MortalityInstance, n_matrix: Matrix, n: int) -> dict:
    poly, report = comm_moment_identity(inst, n_matrix, n)
    return {"kind": "comm_moment_identity", "instance": inst.to_json(),
            "N": [[str(v) for v in r] for r in n_matrix.rows], "n": n,
            "poly": poly.to_json(), "equal": report["equal"]}


def lifted_certificate(inst: MortalityInstance, bound: int) -> dict:
    """Mortality search against the lifted trace criterion with the last
    exponent fixed to 1."""
    found = mortality_search(inst, bound)
    negative = None
    for exps in sorted(itertools.product(range(bound + 1), repeat=inst.d), key=lambda t: (sum(t), [-x for x in t])):
        if lifted_trace(inst, list(exps) + [1]) < 0:
            negative = list(exps) + [1]
            break
    return {"kind": "lifted_mortality", "instance": inst.to_json(), "bound": bound,
            "mortal": list(found) if found else None, "negative_lifted": negative}


def polya_certificate(result) -> dict:
    return result.to_json()


def isolation_check(p: NCPoly) -> bool:
    """Every stored coefficient read back through its isolation matrices."""
    for w, c in p.terms.items():
        if not w:
            continue
        if nc_eval(p, isolation_matrices(w, p.letters))[0, len(w)] != c:
            return False
    return True
