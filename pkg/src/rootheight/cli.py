"""Command-line interface: inspect root systems, run the identity suite,
and emit partial-fraction decompositions, in table or canonical JSON form.

Exit codes: 0 all requested checks pass, 1 at least one identity failed,
2 usage error.  JSON output is canonical (sorted keys, compact separators,
no floats; rationals rendered as "p/q" strings) and newline-terminated.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .errors import RootHeightError
from .exactalg import Polynomial, poly_str
from .identities import (CHECK_IDS, available_checks, b_poly,
                         munagi_decompose, run_suite)
from .rootsys import (DEFAULT_BFS_CAP, RootSystemId, build, default_catalog,
                      factorization_string, weyl_order)

MAX_RANK = 500


class UsageError(Exception):
    pass


def _dump_json(doc):
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _poly_json(p):
    return {"coeffs": [str(Fraction(c)) for c in p.coeffs],
            "pretty": poly_str(p)}


def _parse_system(family, rank):
    rsid = RootSystemId(family.upper(), rank)
    if rank > MAX_RANK:
        raise UsageError(f"rank {rank} above the configured limit {MAX_RANK}")
    try:
        return build(rsid)
    except RootHeightError as exc:
        raise UsageError(str(exc)) from None


def _parse_selector(tokens):
    if not tokens or tokens == ["all"]:
        return [_parse_system(str(i.family), i.rank) for i in default_catalog()]
    if len(tokens) == 2:
        try:
            rank = int(tokens[1])
        except ValueError:
            raise UsageError(f"rank must be an integer, got {tokens[1]!r}") from None
        return [_parse_system(tokens[0], rank)]
    raise UsageError(f"selector must be 'all' or '<family> <rank>', got {tokens!r}")


# -- info -----------------------------------------------------------------------


def _info_doc(rs):
    from .rootsys import coxeter_element

    spoly = Polynomial(())
    for e in rs.exponents:
        spoly = spoly + Polynomial.monomial(e - 1)
    dyn = Polynomial.geometric(rs.h) * spoly
    anti = Polynomial.geometric(rs.h - 1) * spoly

    return {
        "system": str(rs.id),
        "family": rs.id.family,
        "rank": rs.id.rank,
        "h": rs.h,
        "num_positive_roots": len(rs.positive_roots),
        "weyl_order": weyl_order(rs),
        "exponents": list(rs.exponents),
        "b": list(rs.b),
        "m": list(rs.m),
        "p": list(rs.p),
        "e_of_d": {str(d): e for d, e in sorted(rs.e_of_d.items())},
        "b_poly": _poly_json(b_poly(rs)),
        "dynkin_poly": _poly_json(dyn),
        "antichain_poly": _poly_json(anti),
        "coxeter_charpoly": dict(_poly_json(coxeter_element(rs).charpoly),
                                 factorization=factorization_string(rs)),
    }


def cmd_info(rs, fmt, out):
    doc = _info_doc(rs)
    if fmt == "json":
        out.write(_dump_json(doc))
        return 0
    out.write(f"system: {doc['system']} (family {doc['family']}, rank {doc['rank']})\n")
    out.write(f"h (Coxeter number): {doc['h']}\n")
    out.write(f"positive roots: {doc['num_positive_roots']}\n")
    out.write(f"Weyl group order: {doc['weyl_order']}\n")
    out.write(f"exponents: {' '.join(map(str, doc['exponents']))}\n")
    out.write(f"b (heights 1..h-1): {' '.join(map(str, doc['b']))}\n")
    out.write(f"m (0..h-1): {' '.join(map(str, doc['m']))}\n")
    out.write(f"p (0..h-1): {' '.join(map(str, doc['p']))}\n")
    out.write("e(d): " + " ".join(f"{d}:{e}" for d, e in sorted(rs.e_of_d.items())) + "\n")
    out.write(f"B(q) = {doc['b_poly']['pretty']}\n")
    out.write(f"D(q) = {doc['dynkin_poly']['pretty']}\n")
    out.write(f"M(q) = {doc['antichain_poly']['pretty']}\n")
    out.write(f"C(q) = {doc['coxeter_charpoly']['pretty']}"
              f" = {doc['coxeter_charpoly']['factorization']}\n")
    return 0


# -- verify ---------------------------------------------------------------------


def _verify_worker(task):
    family, rank, props, bfs_cap = task
    rs = build(RootSystemId(family, rank))
    ids = props if props is not None else available_checks(rs)
    reports = run_suite(rs, ids, bfs_cap=bfs_cap)
    return {"system": str(rs.id),
            "checks": sorted((r.as_dict() for r in reports), key=lambda c: c["id"])}


def cmd_verify(systems, props, bfs_cap, jobs, fmt, out):
    tasks = []
    for rs in systems:
        ids = None
        if props is not None:
            unknown = [p for p in props if p not in CHECK_IDS]
            if unknown:
                raise UsageError(f"unknown checks: {','.join(unknown)}")
            ids = [p for p in props if p in available_checks(rs)]
        tasks.append((rs.id.family, rs.id.rank, ids, bfs_cap))

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_worker, tasks))
    else:
        results = [_verify_worker(t) for t in tasks]
    results.sort(key=lambda doc: (doc["system"][0], int(doc["system"][1:])))

    failed = sum(1 for doc in results for c in doc["checks"]
                 if c["verdict"] != "pass")
    if fmt == "json":
        out.write(_dump_json(results))
    else:
        total = 0
        for doc in results:
            for c in doc["checks"]:
                total += 1
                line = f"{doc['system']:<5} {c['id']:<12} {c['verdict']}"
                if c["witness"]:
                    line += f"  [{c['witness']}]"
                out.write(line + "\n")
        out.write(f"{total - failed}/{total} checks passed on "
                  f"{len(results)} systems\n")
    return 1 if failed else 0


# -- munagi ---------------------------------------------------------------------


def cmd_munagi(coeffs, h, roundtrip, fmt, out):
    if len(coeffs) > h:
        raise UsageError(f"{len(coeffs)} coefficients exceed period {h}")
    numer = Polynomial(coeffs)
    dec = munagi_decompose(numer, h)
    ok = dec.reconstruct() == numer
    if fmt == "json":
        doc = {"h": h,
               "parts": {str(d): _poly_json(p) for d, p in sorted(dec.parts.items())}}
        if roundtrip:
            doc["roundtrip"] = "ok" if ok else "mismatch"
        out.write(_dump_json(doc))
    else:
        for d, part in sorted(dec.parts.items()):
            out.write(f"H_{d} = {poly_str(part)}\n")
        if roundtrip:
            out.write(f"roundtrip: {'ok' if ok else 'mismatch'}\n")
    return 0 if ok else 1


# -- entry point ------------------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="rootheight",
        description="Exact root-system height distributions and their identity suite.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="print invariants of one system")
    p.add_argument("family", help="one of A B C D E F G")
    p.add_argument("rank", type=int)
    p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("verify", help="run identity checks")
    p.add_argument("selector", nargs="*",
                   help="'all' or a family/rank pair; default all")
    p.add_argument("--props", help="comma-separated check ids")
    p.add_argument("--all", action="store_true", dest="all_props",
                   help="run every applicable check (default)")
    p.add_argument("--bfs-cap", type=int, default=None,
                   help=f"Weyl enumeration cap (default {DEFAULT_BFS_CAP}; "
                        "env ROOTHEIGHT_BFS_CAP)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("munagi", help="partial-fraction decomposition of a numerator")
    p.add_argument("coeffs", help="comma-separated rational coefficients c0,c1,...")
    p.add_argument("--h", type=int, required=True, dest="h")
    p.add_argument("--roundtrip", action="store_true")
    p.add_argument("--format", choices=("table", "json"), default="table")
    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    out = sys.stdout
    try:
        if args.command == "info":
            return cmd_info(_parse_system(args.family, args.rank), args.format, out)
        if args.command == "verify":
            systems = _parse_selector(args.selector)
            props = None
            if args.props and args.all_props:
                raise UsageError("--props and --all are mutually exclusive")
            if args.props:
                props = [p.strip() for p in args.props.split(",") if p.strip()]
            cap = args.bfs_cap
            if cap is None:
                cap = int(os.environ.get("ROOTHEIGHT_BFS_CAP", DEFAULT_BFS_CAP))
            if args.jobs < 1:
                raise UsageError("--jobs must be positive")
            return cmd_verify(systems, props, cap, args.jobs, args.format, out)
        if args.command == "munagi":
            try:
                coeffs = [Fraction(tok.strip()) for tok in args.coeffs.split(",")]
            except (ValueError, ZeroDivisionError) as exc:
                raise UsageError(f"bad coefficient list: {exc}") from None
            return cmd_munagi(coeffs, args.h, args.roundtrip, args.format, out)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"rootheight: error: {exc}", file=sys.stderr)
        return 2


def entry():
    raise SystemExit(main())
