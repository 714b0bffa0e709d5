"""Command-line front end.

Exit codes: 0 success, 2 bad arguments, 3 a verification or consistency
check failed, 4 the search budget ran out before an answer was known.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from contextlib import contextmanager

from . import construct
from .abelian import AbelianGroup, count_zero_sum_halves, enumerate_splits, split_lower_bound
from .errors import ConsistencyError
from .ortho import OrthoKind, check_certificate, read_certificates
from .search import Mode, SearchSpec, existence_table, naive_oracle, search

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_BUDGET = 0, 2, 3, 4


class UsageError(Exception):
    pass


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _emit(args, record, text):
    print(json.dumps(record) if args.json else text)


def _spec(args, n, kind, mode, limit=None):
    return SearchSpec(
        n, kind, mode, limit=limit, node_budget=args.node_budget, threads=args.threads, order=args.order
    )


def cmd_exists(args):
    rows = existence_table(args.kind, args.n_max, n_min=args.n_min, node_budget=args.node_budget,
                           threads=args.threads, order=args.order)
    label = {True: "exists", False: "none", None: "unknown"}
    for n, found in rows:
        _emit(args, {"n": n, "kind": args.kind, "exists": found}, f"{n}\t{label[found]}")
    return EXIT_BUDGET if any(found is None for _, found in rows) else EXIT_OK


def cmd_count(args):
    if args.oracle:
        count = naive_oracle(args.n, args.kind)
        _emit(args, {"n": args.n, "kind": args.kind, "count": count, "exhausted": True, "engine": "oracle"}, str(count))
        return EXIT_OK
    res = search(_spec(args, args.n, args.kind, Mode.COUNT))
    record = res.to_record()
    del record["certificates"]
    _emit(args, record, str(res.count) if res.exhausted else f">= {res.count} (budget exhausted)")
    return EXIT_OK if res.exhausted else EXIT_BUDGET


def cmd_enumerate(args):
    res = search(_spec(args, args.n, args.kind, Mode.ENUMERATE_ALL, limit=args.limit))
    with _output(args.out) as fh:
        for cert in res.certificates:
            fh.write(cert.to_json() + "\n")
    summary = f"{len(res.certificates)} certificates; count {'=' if res.exhausted else '>='} {res.count}"
    print(summary, file=sys.stderr if args.out in (None, "-") else sys.stdout)
    if not res.exhausted and args.limit is None:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_verify(args):
    with open(args.infile) as fh:
        lines = fh.readlines()
    checked = 0
    for lineno, cert in enumerate(read_certificates(lines), start=1):
        problem = check_certificate(cert)
        if problem is not None:
            where = "" if problem.index is None else f" (x={problem.index})"
            print(f"record {lineno}: invalid{where}: {problem.reason}", file=sys.stderr)
            if args.json:
                print(json.dumps({"record": lineno, "index": problem.index, "reason": problem.reason}))
            return EXIT_VERIFY
        checked += 1
    _emit(args, {"verified": checked}, f"{checked} certificates verified")
    return EXIT_OK


def cmd_construct(args):
    certs = construct.generate_all(args.n) if args.all else [construct.construct_one(args.n)]
    with _output(args.out) as fh:
        for cert in certs:
            fh.write(cert.to_json() + "\n")
    if args.out not in (None, "-"):
        print(f"{len(certs)} certificates written to {args.out}")
    return EXIT_OK


def cmd_bound(args):
    bound = construct.theorem3_bound(args.n)
    walks = construct.walk_counts(args.n)
    record = {"n": args.n, "bound": bound.to_record(), "walks": walks}
    if bound.is_rational:
        num, den = construct.theorem3_terms(args.n)
        frac = bound.as_fraction()
        value = str(frac.numerator) if frac.denominator == 1 else f"{float(frac):.6g}"
        text = f"{value} (exact: {num}/{den})"
    else:
        text = f"{float(bound):.6g} (exact: {bound})"
    _emit(args, record, text)
    return EXIT_OK


def cmd_split(args):
    try:
        G = AbelianGroup.parse(args.group)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    count = count_zero_sum_halves(G)
    bound = split_lower_bound(G.order)
    record = {"group": list(G.factor_orders), "order": G.order, "count": count,
              "bound": bound.to_record(), "meets_bound": count >= bound}
    if args.enumerate:
        items = [(g, copy) for copy in (0, 1) for g in G.elements]
        splits = enumerate_splits(G, items, key=lambda item: item[0])
        record["splits"] = [[list(map(list, s.left)), list(map(list, s.right))] for s in splits]
    text = f"{G} (order {G.order}): {count} zero-sum halves, bound {float(bound):.6g}"
    if args.enumerate and not args.json:
        text += "".join(f"\n  {s.left} | {s.right}" for s in splits)
    _emit(args, record, text)
    return EXIT_OK if count >= bound else EXIT_VERIFY


def report_rows(n_max, node_budget=None, threads=1):
    rows = []
    for n in range(2, n_max + 1):
        res = {k: search(SearchSpec(n, k, Mode.COUNT, node_budget=node_budget, threads=threads)) for k in OrthoKind}
        row = {"n": n}
        for kind, r in res.items():
            row[kind.value] = r.exists
        exp = res[OrthoKind.EXPONENTIAL]
        row["exponential_count"] = exp.count if exp.exhausted else None
        try:
            row["theorem3_bound"] = float(construct.theorem3_bound(n))
        except ValueError:
            row["theorem3_bound"] = None
        add = res[OrthoKind.ADDITIVE]
        if n % 2 and add.exhausted:
            row["emm_ratio"] = add.count * n**n / math.factorial(n) ** 2
        else:
            row["emm_ratio"] = None
        rows.append(row)
    return rows


def cmd_report(args):
    rows = report_rows(args.n_max, args.node_budget, args.threads)
    fields = ["n", "additive", "multiplicative", "exponential", "exponential_count", "theorem3_bound", "emm_ratio"]
    if args.json:
        for row in rows:
            print(json.dumps(row))
    elif args.csv:
        writer = csv.DictWriter(sys.stdout, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)
    else:
        def cell(v):
            if v is True:
                return "exists"
            if v is False:
                return "none"
            if v is None:
                return "-"
            return f"{v:.4g}" if isinstance(v, float) else str(v)

        unknown = {"additive", "multiplicative", "exponential", "exponential_count"}
        print("\t".join(fields))
        for row in rows:
            print("\t".join("unknown" if row[f] is None and f in unknown else cell(row[f]) for f in fields))
    if any(row[k] is None for row in rows for k in ("additive", "multiplicative", "exponential")):
        return EXIT_BUDGET
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON records")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--node-budget", type=int, default=None,
                        help="search node cap (default: $ORTHO_NODE_BUDGET or built-in)")
    common.add_argument("--order", choices=("rank", "natural", "reverse"), default="rank")

    parser = argparse.ArgumentParser(prog="orthomorph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    kinds = [k.value for k in OrthoKind]

    p = sub.add_parser("exists", parents=[common], help="existence table for n up to N")
    p.add_argument("kind", choices=kinds)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-min", type=int, default=2)
    p.set_defaults(func=cmd_exists)

    p = sub.add_parser("count", parents=[common], help="count orthomorphisms mod n")
    p.add_argument("kind", choices=kinds)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="use the factorial oracle (n <= 9)")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", parents=[common], help="write certificates as JSON lines")
    p.add_argument("kind", choices=kinds)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--limit", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common], help="check a JSON-lines certificate file")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", parents=[common], help="build exponential orthomorphisms mod 2p")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--all", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("bound", parents=[common], help="lower bound on exponential orthomorphisms")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("split", parents=[common], help="zero-sum halvings of G + G")
    p.add_argument("--group", required=True, help='cyclic orders, e.g. "2,6"')
    p.add_argument("--enumerate", action="store_true")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("report", parents=[common], help="summary table for n up to N")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"orthomorph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as exc:
        print(f"orthomorph: consistency failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
