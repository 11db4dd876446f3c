"""Command line front end.

    og6lattice lattice info "U^2 + [-2]^3"
    og6lattice lattice disc "U(2)"
    og6lattice embed check "[-2]" "[2]" "U"
    og6lattice og6 classify --table

Exit codes: 0 success, 1 a table comparison failed, 2 the input did not
parse, 3 the question is outside the brute-force regime.
"""

import argparse
import json
import sys

from .embeddings import (
    divisibility_in_ambient,
    enumerate_gluings,
    gluing_index_square,
)
from .errors import ExprSyntaxError, LatticeError, UndecidedError
from .expr import lattice_from_text
from .finite_forms import delta_invariant, discriminant_form, is_p_elementary, length
from .lattice import DEFAULT_BOUND, determinant, divisibility, signature, vectors_of_norm
from .og6 import ClassificationRow, classify_row, find_row, load_table

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_UNDECIDED = 0, 1, 2, 3
EMBED_BOUND = 2


def _frac(x):
    return str(x)


def _primes(n):
    n, out, p = abs(n), [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def info_report(src):
    l = lattice_from_text(src)
    sig = signature(l)
    return {"kind": "info", "expr": l.label, "rank": l.rank, "signature": [sig.pos, sig.neg],
            "determinant": determinant(l), "even": True}


def disc_report(src):
    l = lattice_from_text(src)
    f = discriminant_form(l)
    det = determinant(l)
    elem = {str(p): is_p_elementary(f, p) for p in _primes(det)}
    delta = delta_invariant(f) if is_p_elementary(f, 2) else None
    return {"kind": "disc", "expr": l.label, "order": f.size, "orders": list(f.orders),
            "qvals": [_frac(x) for x in f.qvals],
            "bform": [[_frac(x) for x in row] for row in f.bform],
            "length": length(f), "p_elementary": elem, "delta": delta}


def embed_report(m_src, n_src, ambient_src, bound):
    m, n, amb = (lattice_from_text(x) for x in (m_src, n_src, ambient_src))
    target = discriminant_form(amb)
    h = gluing_index_square(m, n, target.size)
    gluings = enumerate_gluings(m, n, target)
    rows = []
    for v in vectors_of_norm(m, -2, bound):
        rows.append({"vector": list(v), "in_m": divisibility(m, v),
                     "in_ambient": [divisibility_in_ambient(m, v, g) for g in gluings]})
    return {"kind": "embed", "m": m.label, "n": n.label, "ambient": amb.label, "h": h,
            "gluings": [{"m_gens": [list(x) for x in g.m_gens],
                         "n_gens": [list(x) for x in g.n_gens], "h": g.h} for g in gluings],
            "bound": bound, "divisibility": rows}


def _row_report(row, verdict, match):
    return {"index": row.index, "order": row.order, "coinvariant": row.coinvariant,
            "invariant": row.invariant, "nms": verdict.nms, "induced": verdict.induced,
            "quotient": verdict.quotient, "expected_induced": row.expected_induced,
            "expected_quotient": row.expected_quotient, "match": match,
            "evidence": list(verdict.evidence)}


def classify_report(rows, bound):
    out = []
    for row in rows:
        v = classify_row(row, bound)
        match = None
        if row.expected_induced is not None:
            match = (v.induced, v.quotient) == (row.expected_induced, row.expected_quotient)
        out.append(_row_report(row, v, match))
    compared = [r for r in out if r["match"] is not None]
    return {"kind": "classify", "rows": out, "matched": sum(r["match"] for r in compared),
            "compared": len(compared)}


def _yn(x):
    return {True: "yes", False: "no", None: "-"}[x]


def render_text(rep):
    kind = rep["kind"]
    if kind == "info":
        pos, neg = rep["signature"]
        return (f"{rep['expr']}\n  rank {rep['rank']}\n  signature ({pos},{neg})\n"
                f"  determinant {rep['determinant']}\n  even yes")
    if kind == "disc":
        lines = [rep["expr"]]
        group = " + ".join(f"Z/{n}" for n in rep["orders"]) or "0"
        lines.append(f"  group {group} (order {rep['order']}, length {rep['length']})")
        lines.append(f"  q = ({', '.join(rep['qvals'])})")
        for row in rep["bform"]:
            lines.append(f"  b | {' '.join(row)}")
        for p, ok in rep["p_elementary"].items():
            lines.append(f"  {p}-elementary {_yn(ok)}")
        if rep["delta"] is not None:
            lines.append(f"  delta {rep['delta']}")
        return "\n".join(lines)
    if kind == "embed":
        lines = [f"M = {rep['m']}, N = {rep['n']}, L = {rep['ambient']}"]
        if rep["h"] is None:
            lines.append("  no integer h with h^2 |det L| = |det M det N|")
        else:
            lines.append(f"  h = {rep['h']}, {len(rep['gluings'])} gluing(s)")
        for i, g in enumerate(rep["gluings"]):
            lines.append(f"  gluing {i}: H = <{g['m_gens']}> -> <{g['n_gens']}>")
        lines.append(f"  norm -2 vectors of M (bound {rep['bound']}):")
        for r in rep["divisibility"]:
            lines.append(f"    {r['vector']}: (v,M) = {r['in_m']}, (v,L) = {r['in_ambient']}")
        return "\n".join(lines)
    if kind == "classify":
        lines = []
        for r in rep["rows"]:
            status = {True: "ok", False: "MISMATCH", None: ""}[r["match"]]
            lines.append(f"|G|={r['order']} row {r['index']}: L_G = {r['coinvariant']}, "
                         f"L^G = {r['invariant']}")
            lines.append(f"  nms {_yn(r['nms'])}, induced {_yn(r['induced'])}, "
                         f"quotient {_yn(r['quotient'])}"
                         + (f"  (table: {_yn(r['expected_induced'])}/"
                            f"{_yn(r['expected_quotient'])}) {status}"
                            if r["match"] is not None else ""))
            for e in r["evidence"]:
                result = "n/a" if e["result"] is None else _yn(e["result"])
                lines.append(f"    [{e['step']}] {e['rule']}: {result}"
                             + (f" - {e['detail']}" if e["detail"] else ""))
        if rep["compared"] > 1:
            lines.append(f"{rep['matched']}/{rep['compared']} rows match Table 1")
        return "\n".join(lines)
    if kind == "error":
        where = f" (byte {rep['offset']})" if rep.get("offset") is not None else ""
        return f"error: {rep['error']}{where}: {rep['message']}"
    raise ValueError(kind)


def build_parser():
    # the global flags are accepted before or after the verb
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", dest="json_after", action="store_true",
                        help="emit a JSON report")
    common.add_argument("--bound", dest="bound_after", type=int, default=None,
                        help=f"witness search bound (default {DEFAULT_BOUND}, "
                             f"{EMBED_BOUND} for embed)")
    ap = argparse.ArgumentParser(prog="og6lattice", description=__doc__.split("\n")[0])
    ap.add_argument("--json", action="store_true", help="emit a JSON report")
    ap.add_argument("--bound", type=int, default=None, help="witness search bound")
    sub = ap.add_subparsers(dest="group", required=True)

    lat = sub.add_parser("lattice", help="inspect a lattice expression")
    lsub = lat.add_subparsers(dest="verb", required=True)
    for verb in ("info", "disc"):
        p = lsub.add_parser(verb, parents=[common])
        p.add_argument("expr")

    emb = sub.add_parser("embed", help="gluings of M and N into an ambient lattice")
    esub = emb.add_subparsers(dest="verb", required=True)
    p = esub.add_parser("check", parents=[common])
    p.add_argument("m")
    p.add_argument("n")
    p.add_argument("ambient")

    og = sub.add_parser("og6", help="OG6 classification")
    osub = og.add_subparsers(dest="verb", required=True)
    p = osub.add_parser("classify", parents=[common])
    p.add_argument("--table", action="store_true", help="classify every corpus row")
    p.add_argument("--row", type=int, help="classify one corpus row")
    p.add_argument("--order", type=int, default=2, help="|G| for --row or --ns/--t")
    p.add_argument("--ns", help="invariant lattice L^G")
    p.add_argument("--t", help="coinvariant lattice L_G")
    p.add_argument("--table-file", help="corpus file instead of the built-in table")
    return ap


def _run(args):
    if args.bound is not None and args.bound < 1:
        raise LatticeError("--bound must be at least 1")
    if args.group == "lattice":
        return info_report(args.expr) if args.verb == "info" else disc_report(args.expr)
    if args.group == "embed":
        return embed_report(args.m, args.n, args.ambient, args.bound or EMBED_BOUND)
    bound = args.bound or DEFAULT_BOUND
    if args.table:
        return classify_report(load_table(args.table_file), bound)
    if args.row is not None:
        return classify_report([find_row(load_table(args.table_file), args.row, args.order)],
                               bound)
    if args.ns and args.t:
        return classify_report([ClassificationRow(0, args.order, args.t, args.ns)], bound)
    raise LatticeError("classify needs --table, --row, or both --ns and --t")


def main(argv=None):
    args = build_parser().parse_args(argv)
    args.json = args.json or args.json_after
    if args.bound_after is not None:
        args.bound = args.bound_after
    code = EXIT_OK
    try:
        rep = _run(args)
        if rep["kind"] == "classify" and rep["matched"] != rep["compared"]:
            code = EXIT_MISMATCH
    except ExprSyntaxError as exc:
        rep = {"kind": "error", "error": "parse", "message": exc.reason, "offset": exc.offset}
        code = EXIT_PARSE
    except UndecidedError as exc:
        rep = {"kind": "error", "error": "undecided", "message": str(exc), "offset": None}
        code = EXIT_UNDECIDED
    except LatticeError as exc:
        rep = {"kind": "error", "error": "input", "message": str(exc), "offset": None}
        code = EXIT_PARSE
    out = sys.stdout if code in (EXIT_OK, EXIT_MISMATCH) else sys.stderr
    if args.json:
        print(json.dumps(rep, indent=2, sort_keys=True), file=out)
    else:
        print(render_text(rep), file=out)
    return code


if __name__ == "__main__":
    sys.exit(main())
