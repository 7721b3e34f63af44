"""Command line front end: ``python -m kregular <command> ...``.

Exit codes: 0 regular (or success), 1 not regular (or corpus mismatch),
2 invalid input, 3 disagreement between regularity criteria.
"""

import argparse
import csv
import io
import sys

import numpy as np

from . import __version__
from .analytic import BoundaryGrid, build_analytic_chain, char_fn, sampled_regularity, SAMPLED
from .commuting import MAX_K, symmetric_k_regular, validate_tuple
from .corpus import CASES, run_case
from .documents import DocumentError, ReportDocument, encode_shaped, load_document
from .errors import KRegularError, PermutationExplosion
from .factorization import build_chain, check_k_regular
from .matrix_core import DEFAULT_TOL

EXIT_REGULAR = 0
EXIT_NOT_REGULAR = 1
EXIT_INVALID = 2
EXIT_INCONSISTENT = 3


class UsageError(Exception):
    pass


def _exit_for(verdict, consistent):
    if not consistent:
        return EXIT_INCONSISTENT
    return EXIT_REGULAR if verdict else EXIT_NOT_REGULAR


def _tolerances(args, doc=None):
    base = doc.tolerance_profile(DEFAULT_TOL) if doc is not None else DEFAULT_TOL
    return base.with_overrides(rank_tol=args.tol_rank, unitary_tol=args.tol_unitary)


def _load(args, kind):
    doc = load_document(args.path)
    if doc.kind != kind:
        raise DocumentError(f"expected a {kind} document, got {doc.kind}", "$.kind")
    return doc, _tolerances(args, doc)


def _chain_citations(rep):
    out = [f"dimension: dim D_A = {rep.dim_product} "
           f"{'==' if rep.verdict_dimension else '!='} {rep.dim_sum} = sum of factor defect dims"]
    out.append(f"unitary: ||Z*Z - I|| = {rep.isometry_defect:.3e}, ||ZZ* - I|| = {rep.coisometry_defect:.3e}")
    if rep.verdict_cascade is not None:
        out.append(f"cascade: all two-factor splits regular = {rep.verdict_cascade}")
    if rep.verdict_intersection is not None:
        out.append(f"intersection: all defect range intersections trivial = {rep.verdict_intersection}")
    return out


def _chain_fields(rep):
    return dict(
        dims={"product": rep.dim_product, "factors": list(rep.factor_dims), "sum": rep.dim_sum},
        defects={"isometry": rep.isometry_defect, "coisometry": rep.coisometry_defect},
        criteria=rep.verdicts,
        citations=_chain_citations(rep),
    )


def cmd_check(args):
    doc, tol = _load(args, "operator_chain")
    rep = check_k_regular(build_chain(doc.matrices, tol))
    report = ReportDocument(
        command="check", kind=doc.kind, verdict=rep.regular, consistent=rep.consistent,
        tolerances=tol.to_dict(), details={"k": len(doc.matrices), "z_matrix": encode_shaped(rep.z_matrix)},
        **_chain_fields(rep),
    )
    return report, _exit_for(rep.regular, rep.consistent)


def cmd_symmetric(args):
    doc, tol = _load(args, "commuting_tuple")
    t = validate_tuple(doc.matrices, tol)
    rep = symmetric_k_regular(t, use_shortcut=not args.no_shortcut, max_k=args.max_k)
    table = [
        {"sigma": list(sigma), "regular": r.regular, "consistent": r.consistent,
         "dim_product": r.dim_product, "dim_sum": r.dim_sum,
         "isometry_defect": r.isometry_defect, "coisometry_defect": r.coisometry_defect}
        for sigma, r in rep.per_permutation.items()
    ]
    criteria = {"all_orderings_regular": rep.verdict}
    cites = [f"dimension: dim D_T = {rep.product_defect_dim}, factor defect dims "
             f"{list(rep.per_factor_defect_dims)} (sum {sum(rep.per_factor_defect_dims)})"]
    if rep.shortcut_used:
        cites.append("shortcut: one regular ordering with finite-dimensional D_T settles every ordering")
    else:
        cites.append(f"enumeration: {len(table)} orderings checked, "
                     f"{sum(r['regular'] for r in table)} regular")
    report = ReportDocument(
        command="symmetric", kind=doc.kind, verdict=rep.verdict, consistent=rep.consistent,
        dims={"product": rep.product_defect_dim, "factors": list(rep.per_factor_defect_dims),
              "sum": sum(rep.per_factor_defect_dims)},
        criteria=criteria, citations=cites, tolerances=tol.to_dict(),
        details={"k": t.k, "shortcut_used": rep.shortcut_used,
                 "fully_enumerated": rep.fully_enumerated, "per_permutation": table},
    )
    return report, _exit_for(rep.verdict, rep.consistent)


def _parse_z(text):
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise UsageError(f"--z expects 're,im', got {text!r}") from None
    if len(parts) == 1:
        parts.append(0.0)
    if len(parts) != 2:
        raise UsageError(f"--z expects 're,im', got {text!r}")
    return complex(parts[0], parts[1])


def cmd_charfn(args):
    doc, tol = _load(args, "contraction")
    T = doc.matrices[0]
    if args.z is not None:
        points = [_parse_z(args.z)]
    else:
        if args.grid < 1:
            raise UsageError("--grid must be >= 1")
        points = list(args.radius * np.exp(2j * np.pi * np.arange(args.grid) / args.grid))
    for z in points:
        if abs(z) >= 1.0:
            raise UsageError(f"z = {z} lies outside the open unit disk")
    values = [char_fn(T, z, tol) for z in points]
    shape = values[0].shape
    notes = ["trivial defect spaces"] if 0 in shape else []
    report = ReportDocument(
        command="charfn", kind=doc.kind, tolerances=tol.to_dict(),
        dims={"domain": shape[1], "codomain": shape[0]},
        details={"notes": notes,
                 "values": [{"z": z, "value": encode_shaped(V)} for z, V in zip(points, values)]},
    )
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "z_re", "z_im", "row", "col", "re", "im"])
        for idx, (z, V) in enumerate(zip(points, values)):
            for (r, c), x in np.ndenumerate(V):
                w.writerow([idx, repr(float(z.real)), repr(float(z.imag)), r, c, repr(float(x.real)), repr(float(x.imag))])
        return buf.getvalue(), EXIT_REGULAR
    return report, EXIT_REGULAR


def cmd_corpus(args):
    if args.all:
        names = list(CASES)
    elif args.case in CASES:
        names = [args.case]
    else:
        raise UsageError(f"unknown case {args.case!r}; choose from {', '.join(CASES)}")
    tol = _tolerances(args)
    rows = []
    for name in names:
        case = CASES[name](tol=tol)
        for r in run_case(case, tol):
            rows.append({"case": r.case, "check": r.key, "expected": r.expected,
                         "computed": r.computed, "pass": r.passed, "source": r.source})
    passed = all(r["pass"] for r in rows)
    per_case = {n: all(r["pass"] for r in rows if r["case"] == n) for n in names}
    report = ReportDocument(command="corpus", kind="corpus", verdict=passed, criteria=per_case,
                            tolerances=tol.to_dict(), details={"rows": rows})
    if args.format == "table":
        lines = [f"{'case':20s} {'check':20s} {'result':6s}  computed"]
        for r in rows:
            comp = r["computed"]
            comp = "matrix" if isinstance(comp, np.ndarray) else comp
            lines.append(f"{r['case']:20s} {r['check']:20s} {'pass' if r['pass'] else 'FAIL':6s}  {comp}")
        return "\n".join(lines) + "\n", 0 if passed else EXIT_NOT_REGULAR
    return report, 0 if passed else EXIT_NOT_REGULAR


def cmd_boundary(args):
    doc, tol = _load(args, "analytic_chain")
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    grid = BoundaryGrid(args.samples)
    ac = build_analytic_chain(doc.polynomials, tol=tol, grid=grid)
    res = sampled_regularity(ac, grid, tol, cross_check=True)
    consistent = not res.inconsistent
    report = ReportDocument(
        command="boundary", kind=doc.kind, verdict=res.verdict, label=SAMPLED, consistent=consistent,
        criteria={"regular_at_every_sample": res.verdict},
        citations=[f"sampled: {grid.n_samples - len(res.failures)} of {grid.n_samples} boundary points regular"],
        tolerances=tol.to_dict(),
        details={"k": ac.k, "n_samples": grid.n_samples, "failures": res.failures,
                 "inconsistent": res.inconsistent},
    )
    return report, _exit_for(res.verdict, consistent)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-rank", type=float, default=None, help="relative rank cutoff")
    common.add_argument("--tol-unitary", type=float, default=None, help="unitarity tolerance")

    p = argparse.ArgumentParser(prog="kregular", description="k-regular factorization checks")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="k-regularity of an operator chain")
    s.add_argument("path")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("symmetric", parents=[common], help="symmetric k-regularity of a commuting tuple")
    s.add_argument("path")
    s.add_argument("--no-shortcut", action="store_true", help="enumerate every ordering")
    s.add_argument("--max-k", type=int, default=MAX_K, help="largest k for full enumeration")
    s.set_defaults(func=cmd_symmetric)

    s = sub.add_parser("charfn", parents=[common], help="characteristic function values")
    s.add_argument("path")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--z", help="single point 're,im'")
    g.add_argument("--grid", type=int, help="n points on the circle of radius --radius")
    s.add_argument("--radius", type=float, default=1.0 - 1e-9)
    s.add_argument("--csv", action="store_true", help="emit CSV instead of JSON")
    s.set_defaults(func=cmd_charfn)

    s = sub.add_parser("corpus", parents=[common], help="reproduce the built-in examples")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--case")
    g.add_argument("--all", action="store_true")
    s.add_argument("--format", choices=("json", "table"), default="json")
    s.set_defaults(func=cmd_corpus)

    s = sub.add_parser("boundary", parents=[common], help="sampled boundary regularity of an analytic chain")
    s.add_argument("path")
    s.add_argument("--samples", type=int, default=256)
    s.set_defaults(func=cmd_boundary)
    return p


def main(argv=None, stdout=None, stderr=None):
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    args = build_parser().parse_args(argv)
    try:
        out, code = args.func(args)
    except PermutationExplosion as exc:
        print(f"error: {exc}; enable the shortcut or raise --max-k", file=stderr)
        return EXIT_INVALID
    except (KRegularError, DocumentError, UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVALID
    stdout.write(out if isinstance(out, str) else out.to_json() + "\n")
    return code
