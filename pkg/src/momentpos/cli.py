"""Command-line front end.

Exit codes: 0 for YES / all coefficients nonnegative / identities verified /
certificate accepted, 1 for NO / Polya witness / certificate rejected,
2 for UNKNOWN, 3 for input errors. Output is canonical JSON (sorted keys,
rationals as "p/q" strings).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from . import deciders as dc
from .certificates import comm_identity_certificate, lifted_certificate, verify
from .exactnum import format_rational, parse_rational
from .freepoly import NCPoly, polya_check
from .lrs import LRSSpec, from_moments
from .matrix import TRACE, LinearFunctional, Matrix
from .reductions import MortalityInstance, build_gadget_N, lift_mortality
from .spectra import analyze

EXIT = {dc.YES: 0, dc.NO: 1, dc.UNKNOWN: 2}
INPUT_ERROR = 3


class InputError(Exception):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _read(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from None


def instance_kind(obj) -> str:
    """Kind of an instance file; bare payloads are recognized by their keys."""
    if not isinstance(obj, dict):
        raise InputError("instance must be a JSON object")
    if "kind" in obj:
        kind = obj["kind"]
        if kind not in ("matrix", "lrs", "ncpoly", "mortality"):
            raise InputError(f"unknown instance kind {kind!r}")
        return kind
    if "rows" in obj:
        return "matrix"
    if "coeffs" in obj:
        return "lrs"
    if "letters" in obj:
        return "ncpoly"
    if "matrices" in obj:
        return "mortality"
    raise InputError("cannot tell the instance kind; add a 'kind' field")


def _payload(obj, key):
    return obj.get(key, obj) if "kind" in obj else obj


def _options(obj, args) -> dict:
    """Budget and classifier options: command-line flags win over the file."""
    opts = dict(obj.get("options", {})) if "kind" in obj else {}
    budget = dict(opts.get("budget", {}))
    for flag, key in (("max_n", "max_moment_index"), ("degree_budget", "max_invariant_degree"),
                      ("relation_bound", "relation_bound"), ("max_boxes", "minimization_depth")):
        value = getattr(args, flag, None)
        if value is not None:
            budget[key] = value
    if getattr(args, "tolerance", None) is not None:
        budget["tolerance"] = args.tolerance
    out = {
        "budget": dc.Budget.from_json(budget),
        "mode": getattr(args, "mode", None) or opts.get("mode", "auto"),
        "epsilon": parse_rational(getattr(args, "epsilon", None) or opts.get("epsilon", "1/100")),
        "progression": tuple(getattr(args, "progression", None) or opts.get("progression", (2, 1))),
    }
    if out["mode"] not in dc.MODES:
        raise InputError(f"unknown mode {out['mode']!r}")
    return out


def _error(message: str) -> tuple[int, dict]:
    return INPUT_ERROR, {"error": message}


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_spectra(obj, args) -> tuple[int, dict]:
    if instance_kind(obj) != "matrix":
        raise InputError("spectra needs a matrix instance")
    a = Matrix.from_json(_payload(obj, "matrix"))
    return 0, analyze(a.map(Fraction)).to_json()


def _decide_matrix(obj, args):
    opts = _options(obj, args)
    a = Matrix.from_json(_payload(obj, "matrix"))
    functional = obj.get("functional") if "kind" in obj else None
    if functional is not None:
        phi = LinearFunctional.from_json(functional)
        if phi.kind != TRACE:
            if opts["mode"] != "auto":
                raise InputError("a non-trace functional is decided through its recurrence; use --mode auto")
            a = a.map(Fraction)
            phi.check(a.size)
            v0 = phi(Matrix.identity(a.size))
            if v0 < 0:
                return dc.Decision(dc.NO, dc._witness(dc.matrix_instance(a, phi), 0, v0), dc._spent(0))
            dec = dc.decide_lrs(from_moments(a, phi), opts["budget"])
            dec.details = {"bridge": "generalized moments from n = 1", "value_at_0": format_rational(v0)}
            return dec
    p, q = opts["progression"]
    return dc.decide_matrix(a, opts["mode"], opts["budget"], opts["epsilon"], int(p), int(q))


def _decide_lrs(obj, args):
    opts = _options(obj, args)
    if opts["mode"] != "auto":
        raise InputError("modes apply to matrix instances only")
    spec = LRSSpec.from_json(_payload(obj, "lrs"))
    return dc.decide_lrs(spec, opts["budget"])


def cmd_decide(obj, args) -> tuple[int, dict]:
    kind = instance_kind(obj)
    if kind == "matrix":
        dec = _decide_matrix(obj, args)
    elif kind == "lrs":
        dec = _decide_lrs(obj, args)
    else:
        raise InputError(f"decide needs a matrix or lrs instance, got {kind}")
    return EXIT[dec.verdict], dec.to_json()


def cmd_lrs(obj, args) -> tuple[int, dict]:
    if instance_kind(obj) != "lrs":
        raise InputError("lrs needs an lrs instance")
    dec = _decide_lrs(obj, args)
    return EXIT[dec.verdict], dec.to_json()


def cmd_polya(obj, args) -> tuple[int, dict]:
    if instance_kind(obj) != "ncpoly":
        raise InputError("polya needs an ncpoly instance")
    p = NCPoly.from_json(_payload(obj, "poly"))
    res = polya_check(p, padded=args.pad)
    return (0 if res.verdict == "all_nonneg" else 1), res.to_json()


def _int_rows(m: Matrix):
    return [[str(x) for x in r] for r in m.rows]


def cmd_gadget(obj, args) -> tuple[int, dict]:
    if instance_kind(obj) != "mortality":
        raise InputError("gadget needs a mortality instance")
    inst = MortalityInstance.from_json(obj)
    out = {
        "kind": "gadget_report",
        "instance": inst.to_json(),
        "N": _int_rows(build_gadget_N(inst.s)),
        "lift": [_int_rows(b) for b in lift_mortality(inst)],
        "lifted_check": lifted_certificate(inst, args.bound),
    }
    ok = True
    if "N" in obj:
        n_matrix = Matrix.integer(obj["N"])
        idents = [comm_identity_certificate(inst, n_matrix, n) for n in range(1, args.n + 1)]
        out["comm_moment_identity"] = idents
        ok = all(c["equal"] for c in idents)
    return (0 if ok else 1), out


def cmd_verify(obj, args) -> tuple[int, dict]:
    if not isinstance(obj, dict):
        raise InputError("certificate must be a JSON object")
    items = obj["results"] if "results" in obj else [obj]
    reports = [verify(x).to_json() for x in items]
    ok = all(r["ok"] for r in reports)
    return (0 if ok else 1), (reports[0] if len(reports) == 1 and "results" not in obj else {"results": reports})


COMMANDS = {
    "spectra": cmd_spectra,
    "decide": cmd_decide,
    "lrs": cmd_lrs,
    "polya": cmd_polya,
    "gadget": cmd_gadget,
    "verify-certificate": cmd_verify,
}


def run_one(command: str, path: str, args) -> tuple[int, dict]:
    try:
        obj = _read(path)
        return COMMANDS[command](obj, args)
    except InputError as exc:
        return _error(str(exc))
    except (KeyError, TypeError, ValueError, ZeroDivisionError, ArithmeticError) as exc:
        name = type(exc).__name__
        text = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        return _error(f"{name}: missing field {text!r}" if isinstance(exc, KeyError) else f"{name}: {text}")


def _run_star(item):
    return run_one(*item)


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors: exit 3 with a JSON diagnostic, since
    argparse's own exit code 2 is taken by UNKNOWN."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stdout.write(dumps({"error": message}) + "\n")
        sys.exit(INPUT_ERROR)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="momentpos", description="Positivity of matrix moment sequences.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, many=False):
        p.add_argument("inputs" if many else "input", nargs="+" if many else None,
                       help="instance JSON file, or - for standard input")
        p.add_argument("--out", help="write the JSON result here instead of standard output")

    def budget_flags(p):
        p.add_argument("--max-n", type=int, dest="max_n", help="largest moment index to enumerate")
        p.add_argument("--degree-budget", type=int, dest="degree_budget", help="invariant polynomial degree")
        p.add_argument("--relation-bound", type=int, dest="relation_bound", help="relation exponent bound")
        p.add_argument("--max-boxes", type=int, dest="max_boxes", help="branch-and-bound box budget")
        p.add_argument("--tolerance", help="numerical tolerance as p/q")

    p = sub.add_parser("spectra", help="spectral classification of a matrix")
    common(p)
    p = sub.add_parser("decide", help="decide positivity of tr(A^n) or of an LRS")
    common(p, many=True)
    budget_flags(p)
    p.add_argument("--mode", choices=dc.MODES)
    p.add_argument("--epsilon", help="epsilon of the general classifier, as p/q")
    p.add_argument("--progression", nargs=2, type=int, metavar=("P", "Q"))
    p.add_argument("--jobs", type=int, default=1, help="decide several inputs in parallel")
    p = sub.add_parser("lrs", help="decide positivity of a linear recurrence sequence")
    common(p)
    budget_flags(p)
    p = sub.add_parser("polya", help="free Polya check of a non-commutative polynomial")
    common(p)
    p.add_argument("--pad", action="store_true", help="pad witness matrices to size deg+1")
    p = sub.add_parser("gadget", help="mortality gadgets and their identities")
    common(p)
    p.add_argument("--bound", type=int, default=3, help="exponent bound of the mortality search")
    p.add_argument("--n", type=int, default=3, help="largest n for the polynomial moment identity")
    p = sub.add_parser("verify-certificate", help="re-check an emitted certificate")
    common(p)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "decide":
        paths = args.inputs
        if len(paths) == 1:
            code, out = run_one("decide", paths[0], args)
        else:
            items = [("decide", path, args) for path in paths]
            if args.jobs > 1:
                with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                    results = list(pool.map(_run_star, items))
            else:
                results = [_run_star(it) for it in items]
            codes = [c for c, _ in results]
            code = max(codes)
            out = {"results": [dict(o, input=path) for (_, o), path in zip(results, paths)]}
    else:
        code, out = run_one(args.command, args.input, args)
    text = dumps(out) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
