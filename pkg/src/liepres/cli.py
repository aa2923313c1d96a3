"""Command line front end: derive, verify, classify, export, free."""

from __future__ import annotations

import argparse
import sys

from . import analysis
from .freelie import lyndon_words
from .linalg import det
from .presentation import ParseError, parse_presentation
from .quotient import (
    NamesNotBasisError,
    cross_validate,
    quotient_closure,
    rewriter_applicable,
    structure_table,
)
from .tabledoc import SchemaError, format_rational, load_table, save_table, to_csv, to_json_text, to_latex


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def _vec_str(coeffs: dict, names) -> str:
    """Human form of a sparse coefficient map, e.g. 2*y3 - h1."""
    if not coeffs:
        return "0"
    parts = []
    for k in sorted(coeffs):
        c = coeffs[k]
        mag = format_rational(abs(c))
        body = names[k] if mag == "1" else f"{mag}*{names[k]}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(parts)


def _is_standard_quadruple(pres) -> bool:
    """Whether the relations are exactly the three quadruple families the rewriter implements."""
    from .g2 import g2_relations
    if len(pres.generators) != 3:
        return False
    return set(pres.relations) == set(g2_relations())


def _load_presentation(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return None
    try:
        return parse_presentation(text)
    except ParseError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        return None


def _print_closure_report(pres, qb) -> None:
    print(f"degree bound: {qb.degree_bound}")
    print(f"dim = {qb.dim}")
    if qb.dim_at_lower is not None:
        print(f"dim at degree bound {qb.degree_bound - 1}: {qb.dim_at_lower}")
    print(f"stabilized: {'yes' if qb.stabilized else 'no'}")
    events = qb.truncation_events
    if events:
        margin = qb.degree_bound - pres.max_relation_degree()
        lowest = min(min(e.kept_degrees) for e in events)
        status = "above" if lowest > margin else "NOT above"
        print(f"dropped consequence trees above degree {qb.degree_bound}: {len(events)} "
              f"(kept components {status} degree {margin})")
    else:
        print(f"dropped consequence trees above degree {qb.degree_bound}: 0")
    witt = {d: len(ws) for d, ws in enumerate(lyndon_words(qb.alphabet, min(qb.degree_bound, pres.max_relation_degree()))) if ws}
    survive = qb.dims_by_degree()
    for d in sorted(witt):
        print(f"degree {d}: {witt[d]} Lyndon words, {survive.get(d, 0)} independent in the quotient")


def _write_table(table, out_path: str | None) -> None:
    if out_path:
        save_table(table, out_path)
        print(f"wrote {out_path}")


def cmd_derive(args) -> int:
    pres = _load_presentation(args.presentation)
    if pres is None:
        return 2

    if args.engine == "rewriter":
        if not rewriter_applicable(pres):
            print("error: the rewriter engine needs 3 generators and relations of top degree 4",
                  file=sys.stderr)
            return 2
        if not _is_standard_quadruple(pres):
            print("error: the rewriter engine implements the standard quadruple relation "
                  "families; this presentation differs, use --engine closure or both",
                  file=sys.stderr)
            return 2
        from .g2 import rewriter_structure_table
        table = rewriter_structure_table()
        print("engine: rewriter")
        print(f"dim = {table.dim}")
        print("stabilization: not applicable (the rewriter reduces every bracket exactly)")
        _write_table(table, args.out)
        return 0

    try:
        qb = quotient_closure(pres, args.max_degree)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"engine: {args.engine}")
    _print_closure_report(pres, qb)

    if args.engine == "closure":
        if not qb.stabilized:
            print("quotient not stabilized at this bound; rerun with a larger --max-degree",
                  file=sys.stderr)
            return 4
        if _is_standard_quadruple(pres):
            from .g2 import named_basis_free
            try:
                table = structure_table(pres, named_basis_free(), qb=qb)
            except NamesNotBasisError:
                print("note: standard named basis rejected, falling back to representative names")
                table = structure_table(pres, None, qb=qb)
        else:
            table = structure_table(pres, None, qb=qb)
        _write_table(table, args.out)
        return 0

    report = cross_validate(pres, args.max_degree, qb=qb)
    if not report.stabilized:
        print("quotient not stabilized at this bound; rerun with a larger --max-degree",
              file=sys.stderr)
        return 4
    if not report.rewriter_applicable:
        print(f"rewriter engine skipped: {report.reason}")
        _write_table(report.closure_table, args.out)
        return 0
    if not report.names_ok:
        print("engines disagree: the closure quotient does not admit the rewriter basis",
              file=sys.stderr)
        return 3
    if report.mismatches:
        print(f"engines disagree on {len(report.mismatches)} bracket pairs:", file=sys.stderr)
        for ni, nj, cmap, rmap in report.mismatches:
            print(f"  [{ni},{nj}]: closure {_vec_str(cmap, report.closure_table.names)}, "
                  f"rewriter {_vec_str(rmap, report.rewriter_table.names)}", file=sys.stderr)
        return 3
    pairs = report.closure_table.dim * (report.closure_table.dim - 1) // 2
    print(f"engines agree on all {pairs} bracket pairs")
    _write_table(report.closure_table, args.out)
    return 0


def cmd_verify(args) -> int:
    try:
        table = load_table(args.table)
        golden = load_table(args.golden)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if table.names != golden.names:
        print("tables differ: basis names do not match")
        print(f"  table:  {' '.join(table.names)}")
        print(f"  golden: {' '.join(golden.names)}")
        return 1
    diffs = table.diff(golden)
    if not diffs:
        print(f"tables agree on all {table.dim * (table.dim - 1) // 2} bracket pairs")
        return 0
    print(f"tables differ on {len(diffs)} bracket pairs:")
    for i, j, mine, theirs in diffs:
        print(f"  [{table.names[i]},{table.names[j]}]: "
              f"table has {_vec_str(mine, table.names)}, "
              f"golden has {_vec_str(theirs, golden.names)}")
    return 1


def cmd_classify(args) -> int:
    try:
        table = load_table(args.table)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    n = table.dim
    violations = analysis.check_jacobi(table)
    triples = n * (n - 1) * (n - 2) // 6
    if violations:
        i, j, k, _ = violations[0]
        print(f"jacobi: FAIL at ({table.names[i]},{table.names[j]},{table.names[k]}) "
              f"and {len(violations) - 1} more of {triples} triples", file=sys.stderr)
        return 5
    print(f"jacobi: ok ({triples} triples)")
    dc = analysis.derived_subalgebra_and_center(table)
    print(f"derived dim: {dc.derived_dim}")
    print(f"center dim: {dc.center_dim}")
    K = analysis.killing_form(table)
    kd = det(K)
    print(f"killing determinant: {format_rational(kd)} ({'nonzero' if kd != 0 else 'zero: degenerate'})")
    if kd == 0:
        series = analysis.lower_central_dims(table)
        if series[-1] == 0:
            print("type: unrecognized (nilpotent: Killing form degenerate)")
        else:
            print("type: unrecognized (Killing form degenerate)")
        return 1
    cartan = analysis.find_cartan_candidate(table)
    if not cartan:
        print("type: unrecognized (no Cartan candidate among the basis elements)")
        return 1
    check = analysis.cartan_check(table, cartan)
    if not check.ok:
        print(f"type: unrecognized (candidate {[table.names[i] for i in cartan]} fails the Cartan check)")
        return 1
    print(f"cartan: {' '.join(table.names[i] for i in cartan)}")
    try:
        rd = analysis.root_decomposition(table, cartan)
    except ValueError as exc:
        print(f"type: unrecognized ({exc})")
        return 1
    mults = sorted({len(rd.root_spaces[r]) for r in rd.roots})
    print(f"roots: {len(rd.roots)} (multiplicities: {' '.join(str(m) for m in mults)})")
    A, name = analysis.cartan_matrix_and_type(rd)
    if A is not None:
        print("cartan matrix: " + "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in A) + "]")
    print(f"type: {name}")
    return 0 if name != "unrecognized" else 1


def cmd_export(args) -> int:
    try:
        table = load_table(args.table)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.format == "json":
            text = to_json_text(table)
        elif args.format == "csv":
            text = to_csv(table)
        else:
            text = to_latex(table)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return 0


def cmd_free(args) -> int:
    grouped = lyndon_words(args.alphabet, args.max_degree)
    counts = [len(ws) for ws in grouped[1:]]
    print(f"{' '.join(str(c) for c in counts)}, total {sum(counts)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liepres",
        description="Exact-arithmetic engine for finitely presented Lie algebras over the rationals.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", help="derive the quotient table from a presentation file")
    p.add_argument("presentation", help="presentation file (.lp)")
    p.add_argument("--max-degree", type=_positive_int, default=8,
                   help="degree bound for the closure engine (default 8)")
    p.add_argument("--engine", choices=("rewriter", "closure", "both"), default="both")
    p.add_argument("--out", help="write the derived table as JSON to this path")
    p.add_argument("--jobs", type=_positive_int, default=1,
                   help="worker count; accepted for compatibility, output bytes never change")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("verify", help="compare a table against a golden table")
    p.add_argument("--table", required=True)
    p.add_argument("--golden", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="certify a table and identify its type")
    p.add_argument("--table", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("export", help="print a table as json, csv, or latex")
    p.add_argument("--table", required=True)
    p.add_argument("--format", choices=("json", "csv", "latex"), required=True)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("free", help="per-degree Lyndon basis counts of the free Lie algebra")
    p.add_argument("--alphabet", type=_positive_int, required=True)
    p.add_argument("--max-degree", type=_positive_int, required=True)
    p.set_defaults(func=cmd_free)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
