"""Command-line front end.

Exit status is 0 on success, 1 when a domain precondition fails (for example a
non-hyperbolic matrix) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .dynamics import TorusPoint, asymptotic_pair_report, contraction_ratios, orbit_density_estimate
from .exactfield import QuadNum
from .hyperbolic import Mat2Z, NotHyperbolicError, certify, parse_matrix
from .invariant import compare, conjugator_search, trace_range
from .torusparams import (
    theta_closed_form,
    theta_from_eigenvectors,
    verify_theta_identities,
)
from .weyl import nondegeneracy_scan, presentation, ruelle_presentation

_COMPACT = {"separators": (",", ":"), "ensure_ascii": False}

# tokens like "-2,1;1,-1" would otherwise be taken for options
_NEGATIVE_LIST = re.compile(r"^-\d[\d.eE+\-]*[,;][\d.eE+\-,;]*$")


class UsageError(Exception):
    pass


def _matrix(text: str) -> Mat2Z:
    try:
        return parse_matrix(text.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _pair(cast):
    def convert(text: str):
        parts = text.strip().split(",")
        if len(parts) != 2:
            raise argparse.ArgumentTypeError(f"expected two comma-separated values, got {text!r}")
        try:
            return tuple(cast(p) for p in parts)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad value list {text!r}") from None

    return convert


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the exact JSON form")
    common.add_argument("--ascii", action="store_true", help="write sqrt(D) instead of √D")

    parser = argparse.ArgumentParser(
        prog="nctorus",
        description="Exact non-commutative torus data for hyperbolic matrices in GL(2,Z). "
        "Matrices are written a,b;c,d (quote the semicolon in a shell).",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("theta", parents=[common], help="slopes by both routes with identity checks")
    p.add_argument("matrix", type=_matrix)

    p = sub.add_parser("invariant", parents=[common], help="canonical trace-range invariant")
    p.add_argument("matrix", type=_matrix)

    p = sub.add_parser("compare", parents=[common], help="compare trace-range invariants")
    p.add_argument("matrices", type=_matrix, nargs="*", metavar="matrix")
    p.add_argument("--stdin", action="store_true", help="read matrices from stdin, one per line")

    p = sub.add_parser("conjugate", parents=[common], help="search for a (flip) conjugator")
    p.add_argument("a", type=_matrix, metavar="A")
    p.add_argument("b", type=_matrix, metavar="B")
    p.add_argument("--bound", type=_positive, default=3)

    p = sub.add_parser("presentation", parents=[common], help="four-unitary commutation relations")
    p.add_argument("matrix", type=_matrix)

    p = sub.add_parser("ruelle", parents=[common], help="five-unitary presentation and W-consistency")
    p.add_argument("matrix", type=_matrix)

    p = sub.add_parser("nondegeneracy", parents=[common], help="scan for degenerate exponent vectors")
    p.add_argument("matrix", type=_matrix)
    p.add_argument("--bound", type=_positive, default=3)

    p = sub.add_parser("simulate", parents=[common], help="asymptotic pair distances (floating point)")
    p.add_argument("matrix", type=_matrix)
    p.add_argument("--point", type=_pair(float), default=(0.1, 0.2), metavar="X1,X2")
    p.add_argument("--mn", type=_pair(int), default=(1, 0), metavar="M,N")
    p.add_argument("--steps", type=_positive, default=20)
    p.add_argument("--tol", type=float, default=1e-5)
    p.add_argument("--csv", metavar="FILE", help="also write the distance sequences as CSV")

    p = sub.add_parser("density", parents=[common], help="covering radius of a finite orbit")
    p.add_argument("matrix", type=_matrix)
    p.add_argument("--point", type=_pair(float), default=(0.0, 0.0), metavar="X1,X2")
    p.add_argument("--N", dest="N", type=_positive, default=40)
    p.add_argument("--grid", type=_positive, default=50)
    return parser


def _fmt(x: QuadNum, args) -> str:
    return x.format(ascii=args.ascii)


def _emit(out, obj, args) -> None:
    out.write(json.dumps(obj, **_COMPACT) + "\n")


def _relation_line(x: str, y: str, phase: QuadNum, args) -> str:
    rhs = f"{y} {x}" if not phase else f"e^(2 pi i {_fmt(phase, args)}) {y} {x}"
    return f"{x} {y} = {rhs}"


def cmd_theta(args, out) -> None:
    H = certify(args.matrix)
    closed = theta_closed_form(H)
    eig = theta_from_eigenvectors(H)
    reports = {
        "closed_form": verify_theta_identities(closed, H),
        "eigenvector": verify_theta_identities(eig, H),
    }
    relation = "identity" if closed.same_values(eig) else (
        "variant" if closed.same_values(eig.variant()) else "unrelated"
    )
    if args.json:
        _emit(out, {
            "matrix": str(args.matrix),
            "delta": H.delta,
            "lambda_u": _fmt(H.lambda_u, args),
            "lambda_s": _fmt(H.lambda_s, args),
            **{k: r.to_dict(args.ascii) for k, r in reports.items()},
            "routes": relation,
        }, args)
        return
    out.write(f"A = {args.matrix}   det={H.det} trace={H.trace} Delta={H.delta}\n")
    out.write(f"lambda_u = {_fmt(H.lambda_u, args)}\nlambda_s = {_fmt(H.lambda_s, args)}\n")
    for name, r in reports.items():
        out.write(f"\n[{name}]\n")
        for i, t in enumerate(r.theta.values, 1):
            out.write(f"  theta{i} = {_fmt(t, args)}\n")
        failed = [k for k, ok in r.checks.items() if not ok]
        out.write(f"  a*t1+b*t2+c*t3+d*t4 = {_fmt(r.sum_value, args)} ({r.sum_is})\n")
        out.write(f"  unstable rows hold for: {r.unstable_rows_hold_for}\n")
        out.write(f"  stable rows hold for:   {r.stable_rows_hold_for}\n")
        out.write("  identities: all pass\n" if not failed else f"  identities failing: {', '.join(failed)}\n")
    out.write(f"\nroutes related by: {relation}\n")


def cmd_invariant(args, out) -> None:
    inv = trace_range(args.matrix)
    if args.json:
        out.write(inv.to_json() + "\n")
        return
    out.write(f"{inv.render(args.ascii)}\n")
    out.write(f"D={inv.D} m={inv.m} basis={[list(r) for r in inv.basis]}\n")


def _read_stdin_matrices(stream) -> list[Mat2Z]:
    mats = []
    for lineno, line in enumerate(stream, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            mats.append(parse_matrix(line))
        except ValueError as exc:
            raise UsageError(f"stdin line {lineno}: {exc}") from None
    return mats


def cmd_compare(args, out, stdin) -> None:
    mats = list(args.matrices)
    if args.stdin:
        mats += _read_stdin_matrices(stdin)
    if len(mats) < 2:
        raise UsageError("compare needs at least two matrices")
    if len(mats) == 2:
        cmp = compare(*mats)
        if args.json:
            _emit(out, {
                "a": cmp.invariant_a.to_dict(),
                "b": cmp.invariant_b.to_dict(),
                "equal": cmp.equal,
                "verdict": cmp.verdict,
            }, args)
            return
        out.write(f"{mats[0]}: {cmp.invariant_a.render(args.ascii)}\n")
        out.write(f"{mats[1]}: {cmp.invariant_b.render(args.ascii)}\n")
        if cmp.equal:
            out.write("equal: trace ranges coincide (inconclusive for flip conjugacy)\n")
        else:
            out.write("NOT equal: trace ranges differ, so the groupoid C*-algebras are "
                      "non-isomorphic and the automorphisms are not flip conjugate\n")
        return
    # batch mode: group matrices by invariant
    classes: dict[str, list[str]] = {}
    invs = {}
    for M in mats:
        inv = trace_range(M)
        classes.setdefault(inv.to_json(), []).append(str(M))
        invs[inv.to_json()] = inv
    if args.json:
        _emit(out, {"classes": [
            {"invariant": json.loads(k), "matrices": v} for k, v in classes.items()
        ]}, args)
        return
    for k, members in classes.items():
        out.write(f"{invs[k].render(args.ascii)}: {' '.join(members)}\n")
    out.write(f"{len(classes)} distinct invariant(s) among {len(mats)} matrices\n")


def cmd_conjugate(args, out) -> None:
    hit = conjugator_search(args.a, args.b, args.bound)
    if args.json:
        if hit is None:
            _emit(out, {"found": False, "bound": args.bound}, args)
        else:
            M, flip = hit
            _emit(out, {"found": True, "bound": args.bound, "M": {"rows": [list(r) for r in M.rows]}, "flip": flip}, args)
        return
    if hit is None:
        out.write(f"no conjugator with entries in [-{args.bound},{args.bound}] (not a proof of non-conjugacy)\n")
        return
    M, flip = hit
    rel = "A M = M B^-1" if flip else "A M = M B"
    out.write(f"M = {M}   ({rel})\n")


def cmd_presentation(args, out) -> None:
    H = certify(args.matrix)
    theta = theta_closed_form(H)
    table = presentation(H, theta)
    if args.json:
        _emit(out, {
            "matrix": str(args.matrix),
            "generators": ["U1", "U2", "V1", "V2"],
            "theta": theta.to_strings(args.ascii),
            "relations": [{"pair": list(k), "phase": _fmt(v, args)} for k, v in table.items()],
        }, args)
        return
    for i, t in enumerate(theta.values, 1):
        out.write(f"theta{i} = {_fmt(t, args)}\n")
    for (x, y), phase in table.items():
        out.write(_relation_line(x, y, phase, args) + "\n")


def cmd_ruelle(args, out) -> None:
    H = certify(args.matrix)
    pres = ruelle_presentation(H)
    data = pres.to_dict(args.ascii)
    if args.json:
        _emit(out, {"matrix": str(args.matrix), **data}, args)
        return
    out.write(f"theta ({data['theta_source']}) = {', '.join(data['theta'])}\n")
    for (x, y), phase in pres.relations.items():
        out.write(f"  {_relation_line(x, y, phase, args)}\n")
    out.write(f"W on U-exponents: {data['w_maps']['U']}\n")
    out.write(f"W on V-exponents: {data['w_maps']['V']}\n")
    for reading, info in data["w_images"].items():
        mark = "verified" if info["verified"] else "FAILS phase preservation"
        out.write(f"[{reading} reading: {mark}]\n")
        for name, img in info["images"].items():
            out.write(f"  W {name} W* = {img}\n")
    out.write(f"bicharacter preserved ((A^-1)^T Q A^T = Q): {data['bicharacter_check']}\n")


def cmd_nondegeneracy(args, out) -> None:
    H = certify(args.matrix)
    found = nondegeneracy_scan(theta_from_eigenvectors(H), args.bound)
    if args.json:
        _emit(out, {"bound": args.bound, "degenerate": [list(g) for g in found]}, args)
        return
    out.write(f"degenerate exponent vectors with |g| <= {args.bound}: {[list(g) for g in found]}\n")
    out.write("non-degenerate within bound\n" if found == [(0, 0, 0, 0)] else "DEGENERATE\n")


def cmd_simulate(args, out) -> None:
    m, n = args.mn
    report = asymptotic_pair_report(args.matrix, TorusPoint(*args.point), m, n, args.steps, args.tol)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(report.to_csv())
    if args.json:
        out.write(report.to_json() + "\n")
        return
    out.write("step  forward                 backward\n")
    for k, (f, b) in enumerate(zip(report.forward_dists, report.backward_dists)):
        out.write(f"{k:4d}  {f:.17g}  {b:.17g}\n")
    ratios = contraction_ratios(report.forward_dists)
    if ratios:
        out.write(f"forward contraction ratio (last): {ratios[-1]:.6f}\n")
    out.write(f"converged forward: {report.converged_forward}  backward: {report.converged_backward}"
              f"  (tol {args.tol:g})\n")


def cmd_density(args, out) -> None:
    radius = orbit_density_estimate(args.matrix, TorusPoint(*args.point), args.N, args.grid)
    if args.json:
        _emit(out, {"N": args.N, "grid": args.grid, "covering_radius": radius}, args)
        return
    out.write(f"covering radius (N={args.N}, grid={args.grid}): {radius:.6g}\n")


COMMANDS = {
    "theta": cmd_theta,
    "invariant": cmd_invariant,
    "conjugate": cmd_conjugate,
    "presentation": cmd_presentation,
    "ruelle": cmd_ruelle,
    "nondegeneracy": cmd_nondegeneracy,
    "simulate": cmd_simulate,
    "density": cmd_density,
}


def _protect(argv: list[str]) -> list[str]:
    # a leading space keeps argparse from reading "-2,1;1,-1" as a flag
    return [f" {a}" if _NEGATIVE_LIST.match(a) else a for a in argv]


def run(argv: list[str] | None = None, out=None, err=None, stdin=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    stdin = stdin or sys.stdin
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(_protect(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "compare":
            cmd_compare(args, out, stdin)
        else:
            COMMANDS[args.command](args, out)
    except UsageError as exc:
        parser.print_usage(err)
        err.write(f"nctorus: error: {exc}\n")
        return 2
    except NotHyperbolicError as exc:
        err.write(f"nctorus: {exc}\n")
        return 1
    except (ValueError, ArithmeticError) as exc:
        err.write(f"nctorus: {exc}\n")
        return 1
    return 0


def main() -> None:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8")
    sys.exit(run())


if __name__ == "__main__":
    main()
