"""Command-line front end.

Subcommands:

* ``info``      group invariants (n0, order, |Aut(G)|, structure flags)
* ``classify``  full classification report as JSON (oracle or theorem mode)
* ``enumerate`` alias for oracle-mode classify
* ``aut``       automorphism group of a graph6 graph
* ``iso``       isomorphism test between two graph6 graphs
* ``export``    a standard-form Cayley graph in graph6/dot/json
* ``sweep``     census over all hypothesis-(*) specs up to an order bound

Exit codes: 0 success, 1 usage error, 2 computation bound exceeded,
3 disagreement with the bundled predictions under --strict.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from metacirc.aut import parametrized_count
from metacirc.autosearch import are_isomorphic, automorphism_group, canonical_form
from metacirc.classify import (
    classify_spec,
    emit_report,
    report_to_json_dict,
    verify_table1,
)
from metacirc.errors import BoundExceeded
from metacirc.graphs import (
    Graph,
    build_cayley,
    from_graph6,
    standard_connection_set,
    to_dot,
    to_graph6,
)
from metacirc.groups import GroupSpec, iter_specs

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BOUND = 2
EXIT_DISAGREEMENT = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the contract reserves 2 for
    # computation bounds, so remap
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _add_group_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=int, required=True, help="modulus of <a> (odd)")
    p.add_argument("--n", type=int, required=True, help="modulus of <b> (odd)")
    p.add_argument("--r", type=int, required=True, help="conjugation multiplier mod m")
    p.add_argument("--ell", type=int, default=1, help="modulus of the central factor (odd, default 1)")


def _spec_from_args(args) -> GroupSpec:
    try:
        return GroupSpec(args.m, args.n, args.r, args.ell)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def build_parser() -> _Parser:
    parser = _Parser(prog="metacirc", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="print group invariants")
    _add_group_args(p)

    for name in ("classify", "enumerate"):
        p = sub.add_parser(name, help="classification report as JSON")
        _add_group_args(p)
        if name == "classify":
            p.add_argument("--mode", choices=("oracle", "theorem"), default="oracle")
        p.add_argument("--bound", type=int, default=1000, help="max group order (default 1000)")
        p.add_argument("--jobs", type=int, default=1, help="parallel workers")
        p.add_argument("--strict", action="store_true", help="exit 3 on any prediction disagreement")
        p.add_argument("--out", type=str, default=None, help="also write the report to a file")
        p.add_argument("--graphs", action="store_true", help="with --out, dump graph6/dot per class")

    p = sub.add_parser("aut", help="automorphism group of a graph")
    p.add_argument("--graph6", type=str, default=None, help="graph6 string")
    p.add_argument("--file", type=str, default=None, help="file with a graph6 line")

    p = sub.add_parser("iso", help="isomorphism test")
    p.add_argument("--a", type=str, required=True, help="first graph6 file")
    p.add_argument("--b", type=str, required=True, help="second graph6 file")

    p = sub.add_parser("export", help="emit a standard-form Cayley graph")
    _add_group_args(p)
    p.add_argument("--j", type=int, required=True, help="standard-set index (1 <= j < n0)")
    p.add_argument("--format", choices=("graph6", "dot", "json"), default="graph6")

    p = sub.add_parser("sweep", help="census over hypothesis-(*) specs")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--strict", action="store_true")
    return parser


def _cmd_info(args) -> int:
    spec = _spec_from_args(args)
    try:
        aut_order = parametrized_count(spec)
    except ValueError:
        from metacirc.aut import brute_force_automorphisms

        try:
            aut_order = len(brute_force_automorphisms(spec))
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_BOUND
    print(f"m={spec.m} n={spec.n} r={spec.r} ell={spec.ell}")
    print(f"n0={spec.n0}")
    print(f"order={spec.order}")
    print(f"aut_order={aut_order}")
    print(f"abelian={spec.is_abelian}")
    print(f"sylow_cyclic={spec.sylow_cyclic}")
    print(f"hypothesis_star={spec.hypothesis_star}")
    return EXIT_OK


def _cmd_classify(args, mode: str) -> int:
    spec = _spec_from_args(args)
    try:
        report = classify_spec(spec, mode=mode, bound=args.bound, jobs=args.jobs)
    except BoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    payload = report_to_json_dict(report)
    print(json.dumps(payload, indent=2))
    if args.out:
        emit_report(report, args.out, graphs=args.graphs)
    if args.strict and _disagrees(payload):
        print("strict: disagreement with bundled predictions", file=sys.stderr)
        return EXIT_DISAGREEMENT
    return EXIT_OK


def _disagrees(payload: dict) -> bool:
    agree = payload["agreement"]
    if agree["theorem2"] is False or agree["table1"] is False:
        return True
    table = payload["theory"]["table1"]
    if table is not None and not table["count_matches_n"]:
        return True
    return bool(payload["findings"])


def _read_graph(args) -> Graph:
    if getattr(args, "graph6", None):
        return from_graph6(args.graph6)
    if getattr(args, "file", None):
        return from_graph6(Path(args.file).read_bytes().split()[0])
    data = sys.stdin.buffer.read().split()
    if not data:
        raise _UsageError("no graph given: use --graph6, --file, or stdin")
    return from_graph6(data[0])


def _cmd_aut(args) -> int:
    g = _read_graph(args)
    group = automorphism_group(g)
    print(f"n={g.n}")
    print(f"aut_order={group.order}")
    print(f"transitive={group.is_transitive()}")
    print(f"canonical={canonical_form(g).decode('ascii')}")
    for p in group.generators:
        print("generator=" + " ".join(map(str, p)))
    return EXIT_OK


def _cmd_iso(args) -> int:
    g1 = from_graph6(Path(args.a).read_bytes().split()[0])
    g2 = from_graph6(Path(args.b).read_bytes().split()[0])
    verdict = are_isomorphic(g1, g2)
    print("isomorphic" if verdict else "not isomorphic")
    return EXIT_OK


def _cmd_export(args) -> int:
    spec = _spec_from_args(args)
    try:
        S = standard_connection_set(args.j, spec)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    g = build_cayley(S, spec)
    if args.format == "graph6":
        sys.stdout.buffer.write(to_graph6(g) + b"\n")
    elif args.format == "dot":
        sys.stdout.write(to_dot(g))
    else:
        print(json.dumps(g.to_json_dict()))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    disagreement = False
    print("m n r n0 order classes phi_n0_half thm2_claim aut_orders agree findings")
    for spec in iter_specs(args.max_order):
        report = classify_spec(spec, mode="oracle", bound=args.max_order, jobs=args.jobs)
        orders = ",".join(str(c.aut_order) for c in report.classes) or "-"
        agree = report.agreement_theorem2
        disagreement |= agree is False or bool(report.findings)
        print(
            f"{spec.m} {spec.n} {spec.r} {spec.n0} {spec.order} "
            f"{report.oracle_count} {report.phi_n0_half} {report.thm2_claim} "
            f"{orders} {agree} {len(report.findings)}"
        )
    if args.strict and disagreement:
        return EXIT_DISAGREEMENT
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "info":
            return _cmd_info(args)
        if args.command == "classify":
            return _cmd_classify(args, args.mode)
        if args.command == "enumerate":
            return _cmd_classify(args, "oracle")
        if args.command == "aut":
            return _cmd_aut(args)
        if args.command == "iso":
            return _cmd_iso(args)
        if args.command == "export":
            return _cmd_export(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        raise _UsageError(f"unknown command {args.command}")
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND


if __name__ == "__main__":
    sys.exit(main())
