"""Command-line front end.

Every invocation prints one JSON object ``{"ok", "result", "error"}`` on
standard output.  Exit status is 0 on success, 1 when the mathematics says no
(for example "not an automorphism"), and 2 for unparsable input or bad usage.
Rationals are written as strings so nothing is lost to floating point.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import acceptance, liealg, plane, spectral
from .exactpoly import ParseError
from .polymap import Automorphism, NotAnAutomorphism, PolyMap, compose, jacobian, parse_map
from .vectorfield import VectorField, bracket, divergence, parse_field, pushforward

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would print and exit on its own
        raise UsageError(message)


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"{name} must be positive")
    return value


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _jsonable(value: Any) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):  # timings only; never a computed quantity
        return value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (PolyMap, VectorField)):
        return str(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _error_kind(exc: BaseException) -> str:
    return re.sub(r"(?<!^)(?=[A-Z])", "_", type(exc).__name__).lower()


# --- handlers ------------------------------------------------------------------


def _maps(texts: Sequence[str]) -> list[PolyMap]:
    return [parse_map(t) for t in texts]


def _fields(texts: Sequence[str]) -> list[VectorField]:
    fields = [parse_field(t) for t in texts]
    if len({f.n for f in fields}) > 1:
        raise ParseError("fields live in different dimensions")
    return fields


def _automorphism(g: PolyMap, inverse_text: str | None) -> Automorphism:
    if inverse_text is not None:
        return Automorphism(g, parse_map(inverse_text, g.n))
    if g.n != 2:
        raise UsageError("pass --inverse for maps outside the plane")
    return plane.invert(g)


def cmd_compose(args) -> Any:
    maps = _maps(args.maps)
    result = maps[0]
    for m in maps[1:]:
        result = compose(result, m)
    return str(result)


def cmd_invert(args) -> Any:
    return str(plane.invert(parse_map(args.map)).inverse)


def cmd_jacobian(args) -> Any:
    mat, det = jacobian(parse_map(args.map))
    return {"matrix": [[str(p) for p in row] for row in mat], "determinant": str(det)}


def cmd_bracket(args) -> Any:
    a, b = _fields([args.first, args.second])
    return str(bracket(a, b))


def cmd_divergence(args) -> Any:
    return str(divergence(parse_field(args.field)))


def cmd_pushforward(args) -> Any:
    g = parse_map(args.map)
    delta = parse_field(args.field, g.n)
    return str(pushforward(_automorphism(g, args.inverse), delta))


def _caps(args) -> tuple[int, int]:
    dim = args.dim_cap if args.dim_cap is not None else _env_int("INDKIT_DIM_CAP", liealg.DEFAULT_DIM_CAP)
    depth = args.depth_cap if args.depth_cap is not None else _env_int("INDKIT_DEPTH_CAP", liealg.DEFAULT_DEPTH_CAP)
    if dim < 1 or depth < 1:
        raise UsageError("caps must be positive")
    return dim, depth


def cmd_closure(args) -> Any:
    dim, depth = _caps(args)
    return liealg.lie_closure(_fields(args.fields), dim, depth).to_json()


def _closed_span(args) -> liealg.LieSpan:
    dim, depth = _caps(args)
    report = liealg.lie_closure(_fields(args.fields), dim, depth)
    if report.status != "closed":
        raise liealg.NotClosed(f"closure stopped: {report.status} at dimension {report.dimension}")
    return report.span


def cmd_derived_series(args) -> Any:
    series = liealg.derived_series(_closed_span(args))
    return {
        "dimensions": [s.dimension for s in series],
        "solvable": series[-1].dimension == 0,
        "terms": [[str(b) for b in s.basis] for s in series],
    }


def cmd_jordan(args) -> Any:
    return spectral.jordan_decompose(parse_field(args.field), args.degree_cap).to_json()


def cmd_exp(args) -> Any:
    g = spectral.exp_lnd(parse_field(args.field), args.bound)
    return {"map": str(g.forward), "inverse": str(g.inverse)}


def cmd_log(args) -> Any:
    return str(spectral.log_unipotent(parse_map(args.map), args.bound))


def cmd_minimal_torus(args) -> Any:
    fields = _fields(args.fields)
    conj = None
    if args.conjugator is not None:
        g = parse_map(args.conjugator, fields[0].n)
        conj = _automorphism(g, args.inverse)
    return spectral.minimal_torus(fields, args.degree_cap, conj).to_json()


def cmd_jvk(args) -> Any:
    g = parse_map(args.map)
    return plane.jvk_factorize(g).to_json(g)


def cmd_normal_form(args) -> Any:
    g = parse_map(args.map)
    return plane.s_normal_form(g).to_json(g)


def cmd_member_f(args) -> Any:
    member, reason = plane.is_member_f_closure(parse_map(args.map))
    return {"member": member, "reason": reason}


def cmd_phi_power(args) -> Any:
    if args.k < 1:
        raise UsageError("k must be at least 1")
    if args.jet is not None:
        return str(plane.phi_power_jet(args.k, args.jet))
    return str(plane.phi_power(args.k))


def cmd_check_lemma_342(args) -> Any:
    if args.kmax < 1:
        raise UsageError("--kmax must be at least 1")
    return {"coefficients": [plane.check_y_term(k) for k in range(1, args.kmax + 1)]}


def cmd_torus_limit(args) -> Any:
    g = parse_map(args.map)
    try:
        return str(plane.torus_conjugation_limit(g, tuple(args.weights), args.jet_order))
    except ValueError as exc:
        if isinstance(exc, plane.NoLimit):
            raise
        raise UsageError(str(exc)) from None


def cmd_orbit_dim(args) -> Any:
    span = _closed_span(args)
    if len(args.point) != span.n:
        raise UsageError(f"point needs {span.n} coordinates")
    return liealg.orbit_tangent_dim(span, args.point)


def cmd_theorem_b(args) -> Any:
    dim, depth = _caps(args)
    return liealg.check_theorem_b(_fields(args.fields), dim, depth, args.bound).to_json()


class AcceptanceFailed(Exception):
    def __init__(self, results):
        failed = [r.number for r in results if not r.passed]
        super().__init__(f"criteria {failed} failed")
        self.results = results


def cmd_verify_all(args) -> Any:
    known = [n for n, _, _ in acceptance.CRITERIA]
    numbers = args.only or known
    unknown = sorted(set(numbers) - set(known))
    if unknown:
        raise UsageError(f"no such criteria: {unknown}; choose from {known[0]}..{known[-1]}")
    results = [acceptance.run_criterion(n) for n in numbers]
    if not args.quiet:
        for r in results:
            print(r.line(), file=sys.stderr)
    if not all(r.passed for r in results):
        raise AcceptanceFailed(results)
    return [r.to_json() for r in results]


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="indkit", description="Exact computations with polynomial automorphisms and vector fields.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    def caps(p):
        p.add_argument("--dim-cap", type=int, default=None, help="default from INDKIT_DIM_CAP or 64")
        p.add_argument("--depth-cap", type=int, default=None, help="default from INDKIT_DEPTH_CAP or 12")

    p = add("compose", cmd_compose, "compose maps left to right: g o h o ...")
    p.add_argument("maps", nargs="+")
    add("invert", cmd_invert, "inverse of a plane automorphism").add_argument("map")
    add("jacobian", cmd_jacobian, "Jacobian matrix and determinant").add_argument("map")
    p = add("bracket", cmd_bracket, "Lie bracket of two fields")
    p.add_argument("first")
    p.add_argument("second")
    add("divergence", cmd_divergence, "divergence of a field").add_argument("field")
    p = add("pushforward", cmd_pushforward, "conjugate a field by an automorphism")
    p.add_argument("map")
    p.add_argument("field")
    p.add_argument("--inverse", help="inverse map (required outside the plane)")
    p = add("closure", cmd_closure, "Lie closure of fields")
    p.add_argument("fields", nargs="+")
    caps(p)
    p = add("derived-series", cmd_derived_series, "derived series of the closure")
    p.add_argument("fields", nargs="+")
    caps(p)
    p = add("jordan", cmd_jordan, "Jordan decomposition of a locally finite field")
    p.add_argument("field")
    p.add_argument("--degree-cap", type=int, default=6)
    p = add("exp", cmd_exp, "time-one flow of a locally nilpotent field")
    p.add_argument("field")
    p.add_argument("--bound", type=int, default=32, help="nilpotency certificate bound")
    p = add("log", cmd_log, "field whose flow is the given unipotent map")
    p.add_argument("map")
    p.add_argument("--bound", type=int, default=32)
    p = add("minimal-torus", cmd_minimal_torus, "smallest torus containing commuting diagonal fields")
    p.add_argument("fields", nargs="+")
    p.add_argument("--degree-cap", type=int, default=6)
    p.add_argument("--conjugator", help="automorphism diagonalizing the fields")
    p.add_argument("--inverse", help="inverse of the conjugator")
    add("jvk", cmd_jvk, "amalgamated product factorization").add_argument("map")
    add("normal-form", cmd_normal_form, "free product normal form of an S-invariant map").add_argument("map")
    add("member-f", cmd_member_f, "membership in the closure of <u, v>").add_argument("map")
    p = add("phi-power", cmd_phi_power, "k-th power of u o v")
    p.add_argument("k", type=int)
    p.add_argument("--jet", type=int, default=None, help="truncate above this total degree")
    p = add("check-lemma-342", cmd_check_lemma_342, "coefficients of y^(3k-1) in phi^k")
    p.add_argument("--kmax", type=int, required=True)
    p = add("torus-limit", cmd_torus_limit, "limit of a torus conjugation")
    p.add_argument("map")
    p.add_argument("--weights", type=int, nargs=2, required=True, metavar=("A", "B"))
    p.add_argument("--jet-order", type=int, default=None)
    p = add("orbit-dim", cmd_orbit_dim, "dimension of the orbit tangent space at a point")
    p.add_argument("fields", nargs="+")
    p.add_argument("--point", type=_rational, nargs="+", required=True)
    caps(p)
    p = add("theorem-b", cmd_theorem_b, "verdict for locally nilpotent generators")
    p.add_argument("fields", nargs="+")
    p.add_argument("--bound", type=int, default=32)
    caps(p)
    p = add("verify-all", cmd_verify_all, "run the acceptance checks")
    p.add_argument("--only", type=int, nargs="+", help="criterion numbers")
    p.add_argument("--quiet", action="store_true", help="no progress lines on stderr")
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[int, dict]:
    """Execute one command and return ``(exit status, envelope)``."""
    try:
        args = build_parser().parse_args(argv)
        result = args.func(args)
        return EXIT_OK, {"ok": True, "result": _jsonable(result), "error": None}
    except (UsageError, ParseError) as exc:
        kind = "parse_error" if isinstance(exc, ParseError) else "usage_error"
        return EXIT_USAGE, {"ok": False, "result": None, "error": {"kind": kind, "detail": str(exc)}}
    except AcceptanceFailed as exc:
        return EXIT_DOMAIN, {
            "ok": False,
            "result": [r.to_json() for r in exc.results],
            "error": {"kind": "acceptance_failed", "detail": str(exc)},
        }
    except (ArithmeticError, ValueError, NotAnAutomorphism) as exc:
        error = {"kind": _error_kind(exc), "detail": str(exc)}
        if isinstance(exc, plane.NoLimit) and exc.witness is not None:
            error["witness"] = list(exc.witness)
        return EXIT_DOMAIN, {"ok": False, "result": None, "error": error}


def main(argv: Sequence[str] | None = None) -> int:
    code, envelope = run(argv)
    print(json.dumps(envelope, separators=(",", ":")))
    return code


if __name__ == "__main__":
    sys.exit(main())
