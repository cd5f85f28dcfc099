"""Command line driver: ``partite-eppa <command> ...``.

Exit status is 0 on success, 1 when a verification fails, 2 on bad input or
an exceeded budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import InvalidTournament, is_partial_automorphism, is_semigeneric, normalize, \
    semigeneric_violation
from .extend import extend_automorphism
from .formats import GraphFormatError, export_dot, parse_graph, parse_partial_map
from .verify import CampaignConfig, run_campaign, verify_automorphism, verify_extends
from .witness import BudgetExceeded, build_witness, witness_size


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_size(args) -> int:
    print(witness_size(args.k, args.n))
    return 0


def cmd_build(args) -> int:
    T = parse_graph(_read(args.graph))
    G = normalize(T)
    W = build_witness(G, args.budget)
    if args.dot:
        _emit(export_dot(W), args.out)
        return 0
    summary = {
        "k": G.k,
        "n": G.n,
        "m": G.m,
        "padding": sorted(G.padding),
        "witness_size": len(W),
        "witness_edges": W.edge_count(),
    }
    _emit(json.dumps(summary, indent=2) + "\n", args.out)
    return 0


def cmd_extend(args) -> int:
    T = parse_graph(_read(args.graph))
    text = args.map
    if Path(text).is_file():
        text = Path(text).read_text()
    p = parse_partial_map(text)
    if not is_partial_automorphism(T, p):
        print("error: the map is not a partial automorphism of the graph", file=sys.stderr)
        return 2
    G = normalize(T)
    W = build_witness(G, args.budget)
    relabel = G.relabel_map
    phi = p.transport(lambda x: W.psi[relabel[x]])
    cert = extend_automorphism(G, W, phi)
    auto = verify_automorphism(W, cert)
    ext = verify_extends(cert, phi)
    flipped = {f"{x},{y}": list(b) for (x, y), b in cert.flips.bits.items() if any(b)}
    doc = {
        "relabeling": [list(r) for r in G.relabeling],
        "iota_hat": [[i, cert.iota_hat[i]] for i in sorted(cert.iota_hat)],
        "phi_hat": [[x, cert.phi_hat[x]] for x in sorted(cert.phi_hat)],
        "flips": {"pairs": len(cert.flips.bits), "nonzero": flipped},
        "theta": [[u.label, v.label] for u, v in cert.as_mapping().items()],
        "automorphism": "ok" if auto is None else str(auto),
        "extends": "ok" if ext is None else str(ext),
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return 0 if auto is None and ext is None else 1


def _print_report(report, as_json: bool):
    if as_json:
        print(report.to_json())
        return
    print(f"instances: {report.instances}")
    print(f"tested: {report.tested}  passed: {report.passed}  failed: {report.failed}")
    print(f"embedding checks: {report.embedding_checks}  failed: {report.embedding_failures}")
    if report.oracle_checks:
        print(f"oracle checks: {report.oracle_checks}")
    for f in report.failures[:20]:
        print(f"FAIL {json.dumps(f['instance'])} phi={f['phi']}: {f['check']}")
    for e in report.errors:
        print(f"ERROR {json.dumps(e['instance'])}: {e['error']}")


def cmd_verify(args) -> int:
    T = parse_graph(_read(args.graph))
    config = CampaignConfig(
        generator="given",
        tournaments=(T,),
        max_dom=args.max_dom,
        phi_sample=args.sample,
        oracle=args.oracle,
        random_completions=args.completions,
        seed=args.seed,
        budget=args.budget,
    )
    report = run_campaign(config)
    _print_report(report, args.json)
    return 0 if report.ok else 1


def cmd_campaign(args) -> int:
    ks = tuple(k for k in range(args.n, args.max_k + 1, args.n))
    random_mode = args.sample is not None
    config = CampaignConfig(
        generator="random" if random_mode else "exhaustive",
        n=args.n,
        ks=ks,
        instances_per_k=args.instances,
        max_dom=args.max_dom,
        phi_sample=args.sample,
        oracle=args.oracle,
        random_completions=args.completions,
        seed=args.seed,
        jobs=args.jobs,
        budget=args.budget,
    )
    report = run_campaign(config)
    _print_report(report, args.json)
    return 0 if report.ok else 1


def cmd_semigeneric(args) -> int:
    T = parse_graph(_read(args.graph))
    if is_semigeneric(T):
        print("semi-generic: yes")
    else:
        i, j, ab, cd = semigeneric_violation(T)
        print(f"semi-generic: no (parts {i},{j}; vertices {list(ab)} and {list(cd)})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="partite-eppa", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("size", help="witness vertex count for k vertices in n parts")
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_size)

    def budgeted(p):
        p.add_argument("--budget", type=int, default=None, help="witness vertex budget")
        return p

    p = budgeted(sub.add_parser("build", help="normalize a graph and build its witness"))
    p.add_argument("graph")
    p.add_argument("--out")
    p.add_argument("--dot", action="store_true", help="emit the witness as DOT")
    p.set_defaults(func=cmd_build)

    p = budgeted(sub.add_parser("extend", help="extend one partial automorphism"))
    p.add_argument("graph")
    p.add_argument("map", help='"x:y,..." or a file holding {"map": [[x, y], ...]}')
    p.add_argument("--out")
    p.set_defaults(func=cmd_extend)

    def checks(p):
        p.add_argument("--max-dom", type=int, default=None)
        p.add_argument("--oracle", action="store_true", help="cross-check with the search oracle")
        p.add_argument("--completions", type=int, default=0,
                       help="extra randomized completions per map")
        p.add_argument("--sample", type=int, default=None, help="random maps per instance")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--json", action="store_true", help="print the report as JSON")
        return budgeted(p)

    p = checks(sub.add_parser("verify", help="check every partial automorphism of one graph"))
    p.add_argument("graph")
    p.set_defaults(func=cmd_verify)

    p = checks(sub.add_parser("campaign", help="check many generated instances"))
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--max-k", type=int, default=4)
    p.add_argument("--exhaustive", action="store_true",
                   help="all orientations and all maps (the default without --sample)")
    p.add_argument("--instances", type=int, default=10, help="random instances per k")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_campaign)

    p = sub.add_parser("semigeneric", help="test the even-quadruple condition")
    p.add_argument("graph")
    p.set_defaults(func=cmd_semigeneric)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "exhaustive", False) and args.sample is not None:
        parser.error("--exhaustive and --sample are exclusive")
    try:
        return args.func(args)
    except (GraphFormatError, InvalidTournament, BudgetExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
