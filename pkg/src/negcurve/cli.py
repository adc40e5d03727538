"""``negcurve`` command line.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 internal
inconsistency. Errors are always reported as a JSON object on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import exact_linalg as el
from . import scan as scan_mod
from .exact_linalg import IntegerMatrix
from .lattice_geom import format_rational, parse_polygon
from .obstruction import build_phi, element_degrees, graded_dims, lift_check, lift_report
from .section_ring import DEFAULT_XL_WINDOW, InternalInconsistency, dim_crosscheck
from .triangle_family import DegreeIndex, as_family, degree_triangle, validate_degree
from .verify import format_diff, load_golden, verify_paper

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _report_error("usage", message)
        sys.exit(EXIT_USAGE)


def _report_error(kind: str, message: str, **extra) -> None:
    obj = {"error": kind, "message": message}
    obj.update(extra)
    print(json.dumps(obj, sort_keys=True), file=sys.stderr)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _window(text: str):
    try:
        return scan_mod.parse_range(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# subcommands

def cmd_verify_paper(args) -> int:
    golden = load_golden(args.expected)
    report = verify_paper(args.alpha, golden)
    text = _dumps(report.to_json())
    if args.json:
        _write(args.json, text)
        print(f"{'verified' if report.ok else 'MISMATCH'}: {len(report.checks)} checks, "
              f"{len(report.mismatches)} mismatches")
    else:
        sys.stdout.write(text)
    if not report.ok:
        print(json.dumps(format_diff(report), sort_keys=True), file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _load_matrix(text: str) -> IntegerMatrix:
    if text.lstrip().startswith("{"):
        return IntegerMatrix.from_json(text)
    return IntegerMatrix.from_text(text)


def cmd_snf(args) -> int:
    A = _load_matrix(_read(args.input))
    print(el.elementary_divisors_padded(A))
    return EXIT_OK


def _target_phi(args):
    """Phi matrix for --polygon/--m or --alpha with --element or --xl/--m."""
    if args.polygon is not None:
        if args.alpha is not None or args.xl is not None:
            raise UsageError("--polygon cannot be combined with --alpha/--xl")
        if args.m is None:
            raise UsageError("--polygon needs --m")
        return build_phi(parse_polygon(args.polygon), args.m), None
    if args.alpha is None:
        raise UsageError("give either --polygon or --alpha")
    fam = as_family(args.alpha)
    element = getattr(args, "element", None)
    if element is not None:
        if args.xl is not None or args.m is not None:
            raise UsageError("--element cannot be combined with --xl/--m")
        deg, q = element_degrees(fam)[element]
    else:
        if args.xl is None or args.m is None:
            raise UsageError("--alpha needs --xl and --m (or --element)")
        deg, q = DegreeIndex(args.xl, args.m), None
    validate_degree(fam, deg)
    if deg.m < 1:
        raise UsageError("m must be >= 1")
    return build_phi(degree_triangle(fam, deg), deg.m, deg), q


def cmd_phi_matrix(args) -> int:
    phi, _ = _target_phi(args)
    if args.format == "json":
        obj = phi.matrix.to_json()
        obj["col_index"] = [list(e) for e in phi.col_index]
        obj["row_index"] = [list(e) for e in phi.row_index]
        _write(args.out, _dumps(obj))
    else:
        _write(args.out, phi.matrix.to_text())
    return EXIT_OK


def cmd_lift(args) -> int:
    phi, default_q = _target_phi(args)
    q = args.mod_exp if args.mod_exp is not None else default_q
    if q is None:
        raise UsageError("--mod-exp is required unless --element is given")
    if q < 2:
        raise UsageError("--mod-exp must be >= 2")
    name = args.element or ("polygon" if args.polygon is not None else str(phi.degree))
    report = lift_report(phi, q, name)
    sys.stdout.write(_dumps(report.to_json()))
    return EXIT_OK


def cmd_ring_dim(args) -> int:
    fam = as_family(args.alpha)
    if args.m_max < 0:
        raise UsageError("--m-max must be nonnegative")
    report = dim_crosscheck(fam, args.m_max, args.xl_window)
    rows = []
    for rec in report.records:
        gd = graded_dims(fam, DegreeIndex(rec.x_L, rec.m))
        rows.append({
            "xL": format_rational(rec.x_L), "m": rec.m, "dim_R": gd.dim_R, "dim_M": gd.dim_M,
            "basis": rec.basis_count, "ok": rec.ok,
        })
    if args.format == "json":
        sys.stdout.write(_dumps({"alpha": str(fam), "ok": report.ok,
                                 "nonzero_degrees": report.nonzero_degrees(), "rows": rows}))
    else:
        print(f"{'xL':>12} {'m':>3} {'dim_R':>5} {'dim_M':>5} {'basis':>5} ok")
        for r in rows:
            print(f"{r['xL']:>12} {r['m']:>3} {r['dim_R']:>5} {r['dim_M']:>5} {r['basis']:>5} "
                  f"{'yes' if r['ok'] else 'NO'}")
    if not report.ok:
        bad = [{"xL": format_rational(r.x_L), "m": r.m} for r in report.mismatches]
        _report_error("ring-dim-mismatch", "monomial basis disagrees with kernel", degrees=bad)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_scan(args) -> int:
    if args.grid < 2:
        raise UsageError("--grid must be >= 2")
    cells = scan_mod.scan(args.poly, args.s, args.t, args.grid)
    text = scan_mod.to_csv(cells) if args.format == "csv" else scan_mod.to_svg(cells, args.grid)
    _write(args.out, text)
    return EXIT_OK


# ---------------------------------------------------------------------------

def _add_target(p, with_element: bool):
    p.add_argument("--alpha", type=_rational, help="family parameter p/q")
    p.add_argument("--xl", type=_rational, help="left base vertex x_L of the degree")
    p.add_argument("--m", type=int, help="multiplicity m of the degree")
    p.add_argument("--polygon", help="explicit support polygon, e.g. '(0,0),(3,0),(0,3)'")
    if with_element:
        p.add_argument("--element", choices=["xi", "xi2", "zeta", "zeta2"],
                       help="use the degree of a named element")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="negcurve", description="Negative curves on blowups of weighted projective planes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify-paper", help="recompute all published values and compare")
    p.add_argument("--alpha", type=_rational, default=None)
    p.add_argument("--json", metavar="PATH", help="write the JSON report here")
    p.add_argument("--expected", metavar="PATH", help="alternative golden file")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("snf", help="padded elementary divisors of a matrix file")
    p.add_argument("--input", required=True, metavar="PATH", help="matrix as text or JSON ('-' for stdin)")
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("phi-matrix", help="export the restriction matrix")
    _add_target(p, with_element=True)
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_phi_matrix)

    p = sub.add_parser("lift", help="liftability mod 2^q")
    _add_target(p, with_element=True)
    p.add_argument("--mod-exp", type=int, metavar="Q")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("ring-dim", help="graded dimensions of R and M")
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--xl-window", type=_window, default=DEFAULT_XL_WINDOW, metavar="A..B")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_ring_dim)

    p = sub.add_parser("scan", help="diamond membership on a slope grid")
    p.add_argument("--poly", choices=sorted(scan_mod.POLYNOMIALS), required=True)
    p.add_argument("--s", type=_window, default=scan_mod.DEFAULT_S_RANGE, metavar="A..B")
    p.add_argument("--t", type=_window, default=scan_mod.DEFAULT_T_RANGE, metavar="A..B")
    p.add_argument("--grid", type=int, default=41)
    p.add_argument("--out", required=True, metavar="PATH")
    p.add_argument("--format", choices=["csv", "svg"], default="csv")
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InternalInconsistency as exc:
        _report_error("internal-inconsistency", str(exc))
        return EXIT_INTERNAL
    except UsageError as exc:
        _report_error("usage", str(exc))
        return EXIT_USAGE
    except OSError as exc:
        _report_error("io", str(exc))
        return EXIT_USAGE
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        _report_error(type(exc).__name__, str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
