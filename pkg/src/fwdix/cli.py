"""Command-line interface: ``fwdix gen|solve|loads|bounds|verify|enumerate``.

Exit codes: 0 success, 2 usage or input error, 3 search budget exhausted
(best routing still written), 4 verification refuted a claim (report still
written). Data goes to stdout or ``--out`` files, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .bounds import graph_bounds, enumerative_min_index
from .families import (BadParams, FamilySpec, VerifyLimits, generate, load_manifest, parse_params,
                       report_csv, report_json, verify_many, FAMILIES)
from .graph import GraphError, connectivity, distances, load_graph, save_graph
from .routing import InvalidRouting, load_profile, load_routing, save_routing
from .solver import (EDGE, GENERAL, LOWER_BOUND_ONLY, MINIMAL, VERTEX, SearchLimits, SolveResult,
                     exact_index, lower_bound_A, lower_bound_B)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_REFUTED = 4

DEFAULT_AUTO = {"general": 7, "minimal": 10}


class UsageError(Exception):
    pass


def auto_limits(env: dict | None = None) -> dict:
    """Orders up to which ``--mode auto`` solves exactly, from ``FWDIX_LIMITS``
    (e.g. ``general=7,minimal=10``)."""
    env = os.environ if env is None else env
    limits = dict(DEFAULT_AUTO)
    text = env.get("FWDIX_LIMITS", "").strip()
    if not text:
        return limits
    for part in text.split(","):
        key, _, value = part.partition("=")
        key = key.strip()
        if key not in limits or not value.strip().isdigit():
            raise UsageError(f"bad FWDIX_LIMITS entry {part!r}; expected general=N,minimal=M")
        limits[key] = int(value)
    return limits


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def cmd_gen(args) -> int:
    try:
        spec = FamilySpec(args.family, parse_params(args.params))
    except BadParams as exc:
        raise UsageError(str(exc)) from exc
    g = generate(spec)
    if args.out:
        save_graph(g, args.out)
    else:
        sys.stdout.write(json.dumps(g.to_json()) + "\n")
    print(f"{g.name}: {g.n} vertices, {g.num_edges} {'arcs' if g.directed else 'edges'}", file=sys.stderr)
    return EXIT_OK


def cmd_solve(args) -> int:
    g = load_graph(args.graph)
    objective = args.index
    mode = args.mode
    dist = distances(g)
    if mode == "auto":
        caps = auto_limits()
        mode = GENERAL if g.n <= caps["general"] else MINIMAL if g.n <= caps["minimal"] else None
    if mode is None:
        lb = (lower_bound_A if objective == VERTEX else lower_bound_B)(g, dist)[1]
        res = SolveResult(objective, GENERAL, lb, LOWER_BOUND_ONLY, lb)
    else:
        limits = SearchLimits(args.max_path_length, args.max_nodes, args.time_limit)
        res = exact_index(g, objective, mode, limits, dist)
    cert_file = None
    if res.certificate is not None and args.routing_out:
        save_routing(res.certificate, args.routing_out, g.name)
        cert_file = args.routing_out
    if args.json:
        sys.stdout.write(_dump(res.to_json(cert_file)))
    else:
        name = "xi" if objective == VERTEX else "pi"
        suffix = "_m" if res.mode == MINIMAL else ""
        print(f"{name}{suffix} = {res.value}")
        print(f"status      {res.status}")
        print(f"lower bound {res.lower_bound}")
        print(f"nodes       {res.nodes}")
        if cert_file:
            print(f"certificate {cert_file}")
    if res.status != "optimal" and res.status != LOWER_BOUND_ONLY:
        print("search budget exhausted; reported value is an upper bound", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_loads(args) -> int:
    g = load_graph(args.graph)
    r = load_routing(args.routing)
    prof = load_profile(g, r)
    sys.stdout.write(prof.to_csv())
    print(f"max vertex load {prof.xi}, max edge load {prof.pi}", file=sys.stderr)
    return EXIT_OK


def cmd_bounds(args) -> int:
    g = load_graph(args.graph)
    conn = connectivity(g)
    dist = distances(g)
    report = graph_bounds(g)
    data = {"graph": {"name": g.name, "n": g.n, "directed": g.directed, "kappa": conn.kappa,
                      "lambda": conn.lam, "maxDegree": g.max_degree, "minDegree": g.min_degree,
                      "diameter": dist.diameter},
            **report.to_json()}
    sys.stdout.write(_dump(data))
    return EXIT_OK


def cmd_verify(args) -> int:
    specs = load_manifest(args.manifest)
    limits = VerifyLimits(general_max_n=args.general_max_n, minimal_max_n=args.minimal_max_n,
                          search=SearchLimits(max_nodes=args.max_nodes, time_budget=args.time_limit))
    records = verify_many(specs, limits, workers=args.threads)
    text = _dump(report_json(records)) if args.json else report_csv(records)
    _emit(text, args.out)
    refuted = [r for r in records if r.failed]
    for rec in refuted:
        print(f"refuted: {rec.spec.family} {rec.spec.label}", file=sys.stderr)
    return EXIT_REFUTED if refuted else EXIT_OK


def cmd_enumerate(args) -> int:
    if args.max_degree is None and args.min_degree is None:
        raise UsageError("enumerate needs --max-degree or --min-degree")
    constraint, degree = ("max", args.max_degree) if args.max_degree is not None else ("min", args.min_degree)
    limits = SearchLimits(max_nodes=args.max_nodes, time_budget=args.time_limit)
    res = enumerative_min_index(args.n, degree, args.index, constraint, limits,
                                enumeration_limit=args.limit)
    if res.witness is None:
        raise UsageError(f"no connected graph of order {args.n} with {constraint} degree {degree}")
    witness_file = args.out or None
    if witness_file:
        save_graph(res.witness, witness_file)
    data = {"n": res.n, "degree": res.degree, "constraint": constraint, "objective": res.objective,
            "value": res.value, "graphs": res.graphs, "optimal": res.optimal,
            "witness": res.witness.to_json(), "witnessFile": witness_file}
    if args.json:
        sys.stdout.write(_dump(data))
    else:
        name = "xi" if args.index == VERTEX else "pi"
        print(f"min {name} over {res.graphs} graphs (n={res.n}, {constraint} degree {degree}) = {res.value}")
        print("witness edges " + " ".join(f"{u}-{v}" for u, v in res.witness.edges()))
    return EXIT_OK if res.optimal else EXIT_BUDGET


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fwdix", description="Compute, bound and verify forwarding indices of graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--threads", type=_positive_int, default=os.cpu_count() or 1,
                        help="worker processes for batch verification (default: all cores)")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("gen", help="generate a family graph as JSON")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--params", required=True, help="comma-separated integers")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    def budget(p):
        p.add_argument("--max-nodes", type=_positive_int, default=5_000_000)
        p.add_argument("--time-limit", type=_positive_float, default=120.0, help="seconds")

    p = sub.add_parser("solve", help="compute xi, xi_m, pi or pi_m")
    p.add_argument("--graph", required=True)
    p.add_argument("--index", choices=[VERTEX, EDGE], default=VERTEX)
    p.add_argument("--mode", choices=[MINIMAL, GENERAL, "auto"], default="auto")
    p.add_argument("--max-path-length", type=_positive_int)
    budget(p)
    p.add_argument("--routing-out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("loads", help="per-vertex and per-edge loads of a routing (CSV)")
    p.add_argument("--graph", required=True)
    p.add_argument("--routing", required=True)
    p.set_defaults(func=cmd_loads)

    p = sub.add_parser("bounds", help="evaluate the bound catalog on a graph (JSON)")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="check family closed forms against the solver")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.add_argument("--general-max-n", type=_positive_int, default=VerifyLimits.general_max_n)
    p.add_argument("--minimal-max-n", type=_positive_int, default=VerifyLimits.minimal_max_n)
    budget(p)
    p.set_defaults(func=cmd_verify, time_limit=60.0)

    p = sub.add_parser("enumerate", help="minimum index over all graphs with a given degree")
    p.add_argument("--n", type=_positive_int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--max-degree", type=_positive_int)
    group.add_argument("--min-degree", type=_positive_int)
    p.add_argument("--index", choices=[VERTEX, EDGE], default=VERTEX)
    p.add_argument("--limit", type=_positive_int, default=6, help="largest order enumerated")
    p.add_argument("--out", help="witness graph file")
    p.add_argument("--json", action="store_true")
    budget(p)
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, GraphError, InvalidRouting, BadParams, OSError,
            json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"fwdix: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


run = main

if __name__ == "__main__":
    sys.exit(main())
