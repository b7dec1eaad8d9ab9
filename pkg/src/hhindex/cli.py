"""Command-line interface.

Exit codes: 0 success, 1 internal error, 2 bad input or parameters,
3 oracle disagreement.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor

from hhindex.core import is_antichain, subtree
from hhindex.errors import HierarchyError, TooLargeForEnumeration
from hhindex.hindex import h_of_antichain, max_h_antichain
from hhindex.ingest import Uniform, Zipf, dump_nodes_table, dump_tree_document, generate_synthetic, parse_hierarchy
from hhindex.oracle import brute_force_max_h, level_scan_max_h
from hhindex.report import input_digest, render_report
from hhindex.transforms import flatten, lift, truncate_at_depth, truncate_at_labels

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2
EXIT_DISAGREE = 3


class InvariantBreach(RuntimeError):
    pass


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _labels(values: list[str] | None) -> list[str]:
    labels = []
    for value in values or ():
        labels.extend(part.strip() for part in value.split(",") if part.strip())
    return labels


def _analyze(h, args) -> str:
    mode = "full"
    if args.truncate_depth is not None:
        h = truncate_at_depth(h, args.truncate_depth)
        mode = "truncated"
    if args.truncate_labels:
        h = truncate_at_labels(h, _labels(args.truncate_labels))
        mode = "truncated"
    if args.lift:
        h = lift(h).hierarchy
        mode = "lifted"
    elif args.flat:
        h = flatten(h)
        mode = "flat"
    report = max_h_antichain(h, prune=not args.no_prune, trace=args.trace)
    members = report.antichain.members
    if not is_antichain(h, members) or h_of_antichain(h, members) != report.h:
        raise InvariantBreach(f"reported antichain does not reproduce h={report.h}")
    if not report.digested <= report.visited <= report.nodes:
        raise InvariantBreach("visited/digested counters out of range")
    return render_report(report, mode, args.digest)


def cmd_compute(args) -> int:
    data = _read(args.input)
    args.digest = input_digest(data)
    h = parse_hierarchy(data, args.format)
    if not args.subtree:
        _write(args.output, (_analyze(h, args) + "\n").encode("utf-8"))
        return EXIT_OK
    parts = [subtree(h, root) for root in args.subtree]
    with ThreadPoolExecutor() as pool:
        rendered = list(pool.map(lambda part: _analyze(part, args), parts))
    if len(rendered) == 1:
        out = rendered[0] + "\n"
    else:
        out = "[\n" + ",\n".join(rendered) + "\n]\n"
    _write(args.output, out.encode("utf-8"))
    return EXIT_OK


def cmd_oracle(args) -> int:
    h = parse_hierarchy(_read(args.input), args.format)
    if args.lift:
        h = lift(h).hierarchy
    fast = max_h_antichain(h, prune=not args.no_prune)
    slow = brute_force_max_h(h) if args.mode == "full" else level_scan_max_h(h)
    agree = fast.h == slow.h
    print(
        f"{'agree' if agree else 'DISAGREE'}: fast h={fast.h} {list(fast.antichain)} "
        f"oracle[{args.mode}] h={slow.h} {list(slow.witness)} examined={slow.antichains_examined}"
    )
    return EXIT_OK if agree else EXIT_DISAGREE


def cmd_gen(args) -> int:
    if args.dist == "uniform":
        dist = Uniform(args.lo, args.hi)
    else:
        dist = Zipf(args.zipf_s, args.zipf_max)
    h = generate_synthetic(
        args.seed, args.nodes, args.max_children, dist,
        internal_citations=args.internal_citations, roots=args.roots,
    )
    _write(args.output, dump_tree_document(h) if args.format == "json" else dump_nodes_table(h))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hhindex", description="h-index of citation hierarchies over antichains"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("--input", "-i", required=True, help="hierarchy file, '-' for stdin")
        p.add_argument("--format", choices=("auto", "tsv", "json"), default="auto")

    p = sub.add_parser("compute", help="compute the h-index of a hierarchy")
    add_input(p)
    p.add_argument("--subtree", action="append", metavar="ID",
                   help="analyze the subtree rooted at ID (repeatable; one report per id)")
    p.add_argument("--truncate-depth", type=int, metavar="D", help="drop nodes deeper than D")
    p.add_argument("--truncate-labels", action="append", metavar="LABELS",
                   help="comma-separated labels whose nodes become leaves")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--lift", action="store_true", help="lift every internal node")
    group.add_argument("--flat", action="store_true", help="ignore structure; rank nodes by direct citations")
    p.add_argument("--no-prune", action="store_true", help="disable child pruning")
    p.add_argument("--trace", action="store_true", help="include the per-level trace")
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("oracle", help="check the fast search against a reference oracle")
    add_input(p)
    p.add_argument("--mode", choices=("full", "levels"), default="full",
                   help="full: every antichain (<= 20 nodes); levels: every l-antichain")
    p.add_argument("--lift", action="store_true")
    p.add_argument("--no-prune", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="write a seeded synthetic hierarchy")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--nodes", "-n", type=int, required=True)
    p.add_argument("--max-children", type=int, default=8)
    p.add_argument("--roots", type=int, default=1)
    p.add_argument("--dist", choices=("zipf", "uniform"), default="zipf")
    p.add_argument("--lo", type=int, default=0, help="uniform lower bound")
    p.add_argument("--hi", type=int, default=100, help="uniform upper bound")
    p.add_argument("--zipf-s", type=float, default=1.1)
    p.add_argument("--zipf-max", type=int, default=10_000)
    p.add_argument("--internal-citations", action="store_true",
                   help="keep citation draws on internal nodes too")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TooLargeForEnumeration as exc:
        print(f"hhindex: {exc}; use --mode levels", file=sys.stderr)
        return EXIT_INPUT
    except (HierarchyError, ValueError, OSError) as exc:
        print(f"hhindex: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantBreach as exc:
        print(f"hhindex: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
