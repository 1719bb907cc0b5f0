"""Command-line entry point.

Exit codes: 0 affirmative/success, 1 proven negative, 2 unknown (budget
ran out), 10 usage errors, 11 parse errors, 12 precondition violations,
13 falsification events.  Certificates are re-verified before emission
even when produced internally; human-readable summaries go to stdout and
machine-readable documents to --out.
"""

from __future__ import annotations

import argparse
import sys

from . import constructive, extremal, gadgets, hamiltonicity, reduction
from .certify import (
    HalinCertificate,
    StarPack,
    TreeCertificate,
    is_generalized_halin,
    is_hist,
    verify_star_pack,
)
from .errors import (
    BudgetExhausted,
    FalsificationError,
    HalinLabError,
    ParseError,
    PreconditionError,
)
from .graph import Graph, bipartition
from .io_formats import (
    emit_certificate,
    emit_graph6,
    load_graph,
    parse_certificate,
)
from .search import SearchBudget, find_hist, find_sghg, ham_path_oracle

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 10
EXIT_PARSE = 11
EXIT_PRECONDITION = 12
EXIT_FALSIFICATION = 13


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; keep >= 10
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _write_out(path: str | None, text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _budget_from(args, required: bool) -> SearchBudget:
    if required and args.node_limit is None and args.time_limit is None:
        raise PreconditionError(
            "solve requires --node-limit or --time-limit (budgets are mandatory)"
        )
    return SearchBudget(args.node_limit, args.time_limit, args.mode)


def _load(args) -> Graph:
    return load_graph(args.graph, args.format)


def _add_graph_args(p: _Parser) -> None:
    p.add_argument("--graph", required=True, help="input graph file")
    p.add_argument(
        "--format",
        choices=["graph6", "edgelist"],
        default=None,
        help="input format (default: inferred from suffix)",
    )


def _add_budget_args(p: _Parser) -> None:
    p.add_argument("--mode", default="first", choices=["first", "canonical", "exhaustive"])
    p.add_argument("--node-limit", type=int, default=None)
    p.add_argument("--time-limit", type=float, default=None)


def build_parser() -> _Parser:
    top = _Parser(prog="halinlab", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a certificate against a host graph")
    _add_graph_args(p)
    p.add_argument("--cert", required=True)
    p.add_argument("--centers", default=None, help="required centers, e.g. 0,1,2")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="search for a certificate")
    p.add_argument("target", choices=["hist", "sghg"])
    _add_graph_args(p)
    _add_budget_args(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("hampath", help="Hamiltonian path between two terminals")
    _add_graph_args(p)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.set_defaults(func=cmd_hampath)

    p = sub.add_parser("hamcycle", help="Hamiltonian cycle in a balanced bipartite graph")
    _add_graph_args(p)
    p.set_defaults(func=cmd_hamcycle)

    p = sub.add_parser("reduce", help="build the SGHG instance for a ham-path question")
    _add_graph_args(p)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--out-graph", required=True)
    p.add_argument("--out-trace", required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("project", help="recover a ham path from an SGHG certificate")
    _add_graph_args(p)
    p.add_argument("--trace", required=True)
    p.add_argument("--cert", required=True)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("build", help="run a constructive builder")
    bsub = p.add_subparsers(dest="builder", required=True)

    b = bsub.add_parser("dense")
    _add_graph_args(b)
    b.add_argument("--alpha-prime", type=float, required=True)
    b.add_argument("--root", type=int, required=True)
    b.add_argument("--out", default=None)
    b.set_defaults(func=cmd_build_dense)

    b = bsub.add_parser("bipartite")
    b.add_argument("--a", type=int, required=True)
    b.add_argument("--b", type=int, required=True)
    b.add_argument("--hubs", type=int, required=True)
    b.add_argument("--block-bound", type=int, required=True)
    b.add_argument("--imbalance", type=int, default=0)
    b.add_argument("--out", default=None)
    b.set_defaults(func=cmd_build_bipartite)

    b = bsub.add_parser("tripartite")
    b.add_argument("--a", type=int, required=True)
    b.add_argument("--b", type=int, required=True)
    b.add_argument("--f", type=int, required=True)
    b.add_argument("--l", type=int, default=0)
    b.add_argument("--hubs", type=int, required=True)
    b.add_argument("--a-block-bound", type=int, required=True)
    b.add_argument("--f-block-bound", type=int, required=True)
    b.add_argument("--out", default=None)
    b.set_defaults(func=cmd_build_tripartite)

    b = bsub.add_parser("matching")
    _add_graph_args(b)
    b.add_argument("--out", default=None)
    b.set_defaults(func=cmd_build_matching)

    b = bsub.add_parser("starpack")
    _add_graph_args(b)
    b.add_argument("--centers", required=True)
    b.add_argument("--tips-from", required=True)
    b.add_argument("--arity", type=int, required=True)
    b.add_argument("--out", default=None)
    b.set_defaults(func=cmd_build_starpack)

    p = sub.add_parser("gadget", help="run an insertion builder on a complete host")
    p.add_argument("--op", choices=["hit", "tree", "forest"], required=True)
    p.add_argument("--size", type=int, required=True, help="inserted vertex count")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("extremal", help="sharpness family tools")
    esub = p.add_subparsers(dest="action", required=True)
    e = esub.add_parser("gen")
    e.add_argument("--a", type=int, required=True)
    e.add_argument("--out", default=None)
    e.set_defaults(func=cmd_extremal_gen)
    e = esub.add_parser("confirm")
    e.add_argument("--a", type=int, required=True)
    e.add_argument("--node-limit", type=int, default=None)
    e.add_argument("--time-limit", type=float, default=None)
    e.set_defaults(func=cmd_extremal_confirm)

    p = sub.add_parser("experiment", help="randomized threshold experiments")
    xsub = p.add_subparsers(dest="action", required=True)
    x = xsub.add_parser("threshold")
    x.add_argument("--n", type=int, required=True)
    x.add_argument("--delta-fraction", type=float, required=True)
    x.add_argument("--trials", type=int, required=True)
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--node-limit", type=int, default=None)
    x.add_argument("--time-limit", type=float, default=None)
    x.add_argument("--threads", type=int, default=1)
    x.add_argument("--out", default=None)
    x.add_argument("--out-csv", default=None)
    x.set_defaults(func=cmd_experiment)

    return top


# -- command bodies -------------------------------------------------------------


def cmd_verify(args) -> int:
    g = _load(args)
    doc = parse_certificate(open(args.cert, encoding="utf-8").read())
    if doc.kind == "hist":
        verdict = is_hist(g, TreeCertificate.from_document(doc))
    elif doc.kind == "sghg":
        verdict = is_generalized_halin(g, HalinCertificate.from_document(doc))
    elif doc.kind == "matching":
        pack = StarPack(
            [(s["center"], s["tips"]) for s in doc.payload["stars"]],
            doc.payload["arity"],
        )
        centers = None
        if args.centers:
            centers = {int(v) for v in args.centers.split(",")}
        verdict = verify_star_pack(g, pack, centers)
    else:
        raise PreconditionError(f"cannot verify documents of kind {doc.kind!r}")
    if verdict:
        print(f"valid {doc.kind} certificate")
        return EXIT_OK
    print(f"invalid: {verdict.code} {verdict.detail}".rstrip())
    return EXIT_NEGATIVE


def cmd_solve(args) -> int:
    g = _load(args)
    budget = _budget_from(args, required=True)
    result = find_hist(g, budget) if args.target == "hist" else find_sghg(g, budget)
    print(f"{args.target}: {result.status} (nodes={result.nodes})")
    if result.status == "unknown":
        return EXIT_UNKNOWN
    if result.status == "none":
        return EXIT_NEGATIVE
    cert = result.certificate
    verdict = (
        is_hist(g, cert)
        if args.target == "hist"
        else is_generalized_halin(g, cert)
    )
    if not verdict:
        raise FalsificationError(f"unverifiable solver output: {verdict.code}")
    if result.solution_count is not None:
        print(f"solutions: {result.solution_count}")
    _write_out(args.out, emit_certificate(cert.to_document()))
    return EXIT_OK


def cmd_hampath(args) -> int:
    g = _load(args)
    witness = hamiltonicity.check_ore_plus(g)
    if witness.holds:
        print("degree-sum condition: holds (constructive route)")
        path = hamiltonicity.ore_ham_path(g, args.x, args.y)
    else:
        print(f"degree-sum condition: fails at {witness.violating_pair} (exact search)")
        path = ham_path_oracle(g, args.x, args.y)
    if path is None:
        print("no hamiltonian path")
        return EXIT_NEGATIVE
    if not hamiltonicity.verify_walk(g, path, closed=False, endpoints=(args.x, args.y)):
        raise FalsificationError("constructed path failed verification")
    print(" ".join(map(str, path)))
    return EXIT_OK


def cmd_hamcycle(args) -> int:
    g = _load(args)
    sides = bipartition(g)
    if sides is None:
        raise PreconditionError("graph is not bipartite")
    cycle = hamiltonicity.moon_moser_cycle(g, sides)
    if not hamiltonicity.verify_walk(g, cycle, closed=True):
        raise FalsificationError("constructed cycle failed verification")
    print(" ".join(map(str, cycle)))
    return EXIT_OK


def cmd_reduce(args) -> int:
    g = _load(args)
    gpp, trace = reduction.reduce_instance(g, args.x, args.y)
    with open(args.out_graph, "wb") as fh:
        fh.write(emit_graph6(gpp) + b"\n")
    _write_out(args.out_trace, emit_certificate(trace.to_document()))
    print(f"instance: {gpp.n} vertices, {gpp.edge_count} edges")
    return EXIT_OK


def cmd_project(args) -> int:
    g = _load(args)
    trace = reduction.ReductionTrace.from_document(
        parse_certificate(open(args.trace, encoding="utf-8").read())
    )
    cert = HalinCertificate.from_document(
        parse_certificate(open(args.cert, encoding="utf-8").read())
    )
    path = reduction.project_certificate(g, trace, cert)
    print(" ".join(map(str, path)))
    return EXIT_OK


def _emit_tree(args, host: Graph, tree: TreeCertificate, summary: str) -> int:
    verdict = is_hist(host, tree)
    if not verdict:
        raise FalsificationError(f"builder output failed verification: {verdict.code}")
    print(summary)
    _write_out(args.out, emit_certificate(tree.to_document()))
    return EXIT_OK


def cmd_build_dense(args) -> int:
    g = _load(args)
    tree = constructive.dense_hist(
        g, constructive.DenseHistParams(args.alpha_prime, args.root)
    )
    return _emit_tree(
        args, g, tree, f"hist: root degree {tree.degree(args.root)}, "
        f"{len(tree.internal())} internal vertices"
    )


def cmd_build_bipartite(args) -> int:
    plan = constructive.BipartiteHistPlan(args.hubs, args.block_bound, args.imbalance)
    tree = constructive.bipartite_hist(args.a, args.b, plan)
    host = Graph.complete_bipartite(args.a, args.b)
    return _emit_tree(args, host, tree, f"hist over K_{{{args.a},{args.b}}}")


def cmd_build_tripartite(args) -> int:
    plan = constructive.TripartiteHistPlan(
        args.hubs, args.a_block_bound, args.f_block_bound
    )
    tree, path = constructive.tripartite_hist(args.a, args.b, args.f, args.l, plan)
    host = constructive.tripartite_host(args.a, args.b, args.f)
    code = _emit_tree(args, host, tree, f"hist plus companion path of {len(path)} vertices")
    if path:
        print("path: " + " ".join(map(str, path)))
    return code


def cmd_build_matching(args) -> int:
    g = _load(args)
    pack = constructive.matching_lower_bound(g)
    if not verify_star_pack(g, pack, {c for c, _ in pack.stars}):
        raise FalsificationError("matching failed verification")
    print(f"matching of size {len(pack.stars)} (edges {g.edge_count}, "
          f"max degree {g.max_degree()})")
    _write_out(args.out, emit_certificate(pack.to_document(g.n)))
    return EXIT_OK


def cmd_build_starpack(args) -> int:
    g = _load(args)
    centers = {int(v) for v in args.centers.split(",")}
    tips = {int(v) for v in args.tips_from.split(",")}
    pack = constructive.star_pack(g, centers, tips, args.arity)
    if pack is None:
        print("no star pack exists")
        return EXIT_NEGATIVE
    if not verify_star_pack(g, pack, centers):
        raise FalsificationError("star pack failed verification")
    print(f"star pack found: {len(pack.stars)} stars of arity {args.arity}")
    _write_out(args.out, emit_certificate(pack.to_document(g.n)))
    return EXIT_OK


def cmd_gadget(args) -> int:
    inst = gadgets.complete_instance(args.a, args.b, args.size)
    builder = {
        "hit": gadgets.insertion_hit,
        "tree": gadgets.insertion_tree,
        "forest": gadgets.insertion_forest,
    }[args.op]
    result = builder(inst)
    for key in sorted(result.counts):
        print(f"{key}: {result.counts[key]}")
    _write_out(args.out, emit_certificate(result.certificate.to_document()))
    return EXIT_OK


def cmd_extremal_gen(args) -> int:
    g, meta = extremal.sharpness_instance(args.a)
    print(
        f"K_{{{meta.a},{meta.b}}}: n={meta.n}, min degree {meta.predicted_delta}"
    )
    _write_out(args.out, emit_graph6(g).decode("ascii") + "\n")
    return EXIT_OK


def cmd_extremal_confirm(args) -> int:
    budget = SearchBudget(args.node_limit, args.time_limit, "canonical")
    report = extremal.confirm_sharpness(args.a, budget)
    m = report.instance
    print(
        f"K_{{{m.a},{m.b}}} (n={m.n}, delta={m.predicted_delta}): "
        f"balanced-leaf hist={report.balanced_hist_found}, sghg={report.sghg_status}"
    )
    if not report.conclusive:
        print("inconclusive: budget exhausted")
        return EXIT_UNKNOWN
    print("confirmed: no balanced-leaf HIST and no SGHG")
    return EXIT_OK


def cmd_experiment(args) -> int:
    budget = SearchBudget(args.node_limit, args.time_limit, "first")
    report = extremal.threshold_experiment(
        args.n, args.delta_fraction, args.trials, args.seed, budget, args.threads
    )
    print(f"rates: {report.rates()}")
    if args.out_csv:
        with open(args.out_csv, "w", encoding="utf-8") as fh:
            fh.write(report.to_csv())
    _write_out(args.out, emit_certificate(report.to_document()))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FalsificationError as exc:
        print(f"FALSIFICATION EVENT: {exc}", file=sys.stderr)
        if exc.dump:
            print(f"dump: {exc.dump}", file=sys.stderr)
        return EXIT_FALSIFICATION
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except HalinLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
