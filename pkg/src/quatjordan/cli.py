"""Command-line front end.  Results go to stdout as one JSON document, logs to stderr.

Exit codes: 0 success, 1 computation error, 2 bad input, 3 failed verification.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .errors import (
    ParseError,
    QuatLinAlgError,
    ShapeError,
    Singular,
    VerificationFailed,
)
from .expmap import exp_jcd_relation, hexp, hlog
from .gen import gen
from .hmat import HMatrix, complex_adjoint
from .io import (
    cmatrix_to_json,
    hmatrix_from_json,
    hmatrix_to_json,
    load_json,
    poly_to_json,
    spec_from_json,
)
from .jcd import additive_jcd, is_semisimple, multiplicative_jcd
from .jordan import jordan_form
from .poly import eval_at_hmatrix
from .spectral import char_poly, spectrum, trace
from .tolerances import DEFAULT, Tolerances

log = logging.getLogger("quatjordan")

MATRIX_COMMANDS = {
    "adjoint": "complex adjoint [[Y, -Z], [conj Z, conj Y]]",
    "charpoly": "real characteristic polynomial of the adjoint",
    "spectrum": "standard eigenvalues with multiplicities",
    "jordan": "Jordan form J and transition P with A P = P J",
    "jcd": "additive decomposition A = S + N",
    "mjcd": "multiplicative decomposition A = S U",
    "exp": "matrix exponential",
    "log": "logarithm via the Jordan form",
    "expjcd": "compare exp(S), exp(N) with the parts of exp(A)",
    "check": "run every verification gate on one matrix",
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quatjordan", description="Jordan forms and decompositions of quaternion matrices.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-rank", type=float, help=f"rank cutoff (default {DEFAULT.rank:g})")
    common.add_argument("--tol-eig", type=float, help=f"eigenspace cutoff (default {DEFAULT.eig:g})")
    common.add_argument("--tol-residual", type=float, help=f"verification bound (default {DEFAULT.residual:g})")
    common.add_argument("--tol-cluster", type=float, help=f"eigenvalue clustering base (default {DEFAULT.cluster:g})")
    common.add_argument("--pretty", action="store_true", help="indent output and show entries as a+bi+cj+dk")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")

    for name, summary in MATRIX_COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=summary)
        sp.add_argument("input", nargs="?", help="matrix JSON file, or - for stdin")
        sp.add_argument("--matrix", help="matrix JSON given inline")

    g = sub.add_parser("gen", parents=[common], help="instance with known Jordan structure")
    g.add_argument("--spec", required=True, help='inline JSON or file: [{"re":..,"im":..,"size":..}, ...]')
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--cond-bound", type=float, default=1e3)
    g.add_argument("--P", dest="P", help="fixed transition matrix JSON instead of a random one")
    return p


def _tolerances(args) -> Tolerances:
    vals = {"rank": args.tol_rank, "eig": args.tol_eig, "residual": args.tol_residual, "cluster": args.tol_cluster}
    for k, v in vals.items():
        if v is not None and not v > 0:
            raise ParseError(f"--tol-{k} must be positive")
    return DEFAULT.with_overrides(**vals)


def _read_inline_or_file(text: str):
    s = text.strip()
    if s.startswith(("[", "{")):
        return load_json(None, s)
    return load_json(s)


def _check(A: HMatrix, tol: Tolerances) -> dict:
    """Residual gates on one matrix; each entry records residual, bound and verdict."""
    n = A.n
    a = A.norm()
    checks = []

    def gate(name, fn):
        try:
            res, bound = fn()
            checks.append({"name": name, "residual": res, "bound": bound, "pass": bool(res <= bound)})
        except Singular as exc:
            checks.append({"name": name, "skipped": str(exc), "pass": True})
        except QuatLinAlgError as exc:
            checks.append({"name": name, "error": f"{type(exc).__name__}: {exc}", "pass": False})

    gate("cayley_hamilton", lambda: (eval_at_hmatrix(char_poly(A, tol), A).norm(), tol.residual * (1 + a) ** (2 * n)))

    def jcd_gate():
        d = additive_jcd(A, tol)
        worst = max(
            d.residuals["commutator"] / ((1 + d.S.norm()) * (1 + d.N.norm())),
            d.residuals["nilpotent"] / (1 + d.N.norm()) ** n,
            0.0 if is_semisimple(d.S, tol) else float("inf"),
        )
        return worst, tol.residual

    gate("additive_jcd", jcd_gate)

    def mjcd_gate():
        d = multiplicative_jcd(A, tol)
        return (d.S @ d.U - A).norm(), tol.residual * (1 + a)

    gate("multiplicative_jcd", mjcd_gate)

    def jordan_gate():
        r = jordan_form(A, tol)
        return r.residual, tol.residual * (1 + a)

    gate("jordan", jordan_gate)

    def log_gate():
        L = hlog(A, tol)
        return (hexp(L, tol) - A).norm(), tol.residual * (1 + a)

    gate("exp_log", log_gate)
    return {"checks": checks, "pass": all(c["pass"] for c in checks)}


def run(args) -> tuple[int, dict]:
    tol = _tolerances(args)
    pretty = args.pretty

    def M(X):
        return hmatrix_to_json(X, pretty)

    if args.command == "gen":
        spec = spec_from_json(_read_inline_or_file(args.spec))
        P = hmatrix_from_json(_read_inline_or_file(args.P)) if args.P else None
        return 0, gen(spec, args.seed, args.cond_bound, P).to_json(pretty)

    if args.matrix is not None and args.input is not None:
        raise ParseError("give either an input file or --matrix, not both")
    A = hmatrix_from_json(load_json(args.input, args.matrix))
    log.debug("read %dx%d matrix", A.n, A.n)
    cmd = args.command
    if cmd == "adjoint":
        return 0, cmatrix_to_json(complex_adjoint(A))
    if cmd == "charpoly":
        c = char_poly(A, tol)
        return 0, {"coeffs": poly_to_json(c), "trace": trace(A), "det": float(c[0])}
    if cmd == "spectrum":
        return 0, {"spectrum": spectrum(A, tol).to_json()}
    if cmd == "jordan":
        r = jordan_form(A, tol)
        return 0, {"spec": [b.to_json() for b in r.spec], "P": M(r.P), "residual": r.residual}
    if cmd == "jcd":
        d = additive_jcd(A, tol)
        return 0, {"S": M(d.S), "N": M(d.N), "f": poly_to_json(d.f), "g": poly_to_json(d.g), "residuals": d.residuals}
    if cmd == "mjcd":
        d = multiplicative_jcd(A, tol)
        return 0, {"S": M(d.S), "U": M(d.U), "f": poly_to_json(d.f), "h": poly_to_json(d.h), "residuals": d.residuals}
    if cmd == "exp":
        return 0, M(hexp(A, tol))
    if cmd == "log":
        return 0, M(hlog(A, tol))
    if cmd == "expjcd":
        r = exp_jcd_relation(A, tol)
        return 0, {"expA": M(r.expA), "S": M(r.S), "N": M(r.N), "S_exp": M(r.S_exp), "U_exp": M(r.U_exp),
                   "residuals": r.residuals()}
    if cmd == "check":
        out = _check(A, tol)
        return (0 if out["pass"] else 3), out
    raise ParseError(f"unknown command {cmd}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        code, out = run(args)
    except (ParseError, ShapeError) as exc:
        code, out = 2, {"error": type(exc).__name__, "message": str(exc)}
    except VerificationFailed as exc:
        code, out = 3, {"error": type(exc).__name__, "message": str(exc)}
    except QuatLinAlgError as exc:
        code, out = 1, {"error": type(exc).__name__, "message": str(exc)}
    except ValueError as exc:
        code, out = 2, {"error": "ParseError", "message": str(exc)}
    if code:
        log.error("%s", out.get("message", "verification failed"))
    json.dump(out, sys.stdout, indent=2 if args.pretty else None)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
