"""Routings (one simple path per ordered pair), their classification and loads."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .graph import DistanceMatrix, Graph, distances

LOWEST_LABEL = "lowest-neighbor-label"
LOAD_AWARE = "load-aware-greedy"
TIE_RULES = (LOWEST_LABEL, LOAD_AWARE)


class InvalidRouting(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        head = "; ".join(self.violations[:3])
        more = f" (+{len(self.violations) - 3} more)" if len(self.violations) > 3 else ""
        super().__init__(f"invalid routing: {head}{more}")


@dataclass(frozen=True)
class Routing:
    paths: Mapping[tuple[int, int], tuple[int, ...]]

    def __getitem__(self, pair):
        return self.paths[pair]

    def __len__(self):
        return len(self.paths)

    def items(self):
        return self.paths.items()

    def with_paths(self, changes: Mapping[tuple[int, int], Sequence[int]]) -> "Routing":
        new = dict(self.paths)
        for pair, path in changes.items():
            new[pair] = tuple(path)
        return Routing(new)

    def to_json(self, graph_name: str | None = None) -> dict:
        pairs = [{"src": s, "dst": t, "path": list(p)} for (s, t), p in sorted(self.paths.items())]
        return {"graph": graph_name, "pairs": pairs}


def make_routing(paths: Mapping[tuple[int, int], Sequence[int]]) -> Routing:
    return Routing({(int(s), int(t)): tuple(int(v) for v in p) for (s, t), p in paths.items()})


def routing_from_json(data: dict) -> Routing:
    return make_routing({(p["src"], p["dst"]): p["path"] for p in data["pairs"]})


def load_routing(path) -> Routing:
    with open(path) as fh:
        return routing_from_json(json.load(fh))


def save_routing(r: Routing, path, graph_name: str | None = None) -> None:
    with open(path, "w") as fh:
        json.dump(r.to_json(graph_name), fh)
        fh.write("\n")


@dataclass
class ValidationReport:
    missing: list = field(default_factory=list)
    extra: list = field(default_factory=list)
    bad_endpoints: list = field(default_factory=list)
    bad_arcs: list = field(default_factory=list)
    non_simple: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not (self.missing or self.extra or self.bad_endpoints
                    or self.bad_arcs or self.non_simple)

    def violations(self) -> list[str]:
        out = [f"missing pair {p}" for p in self.missing]
        out += [f"unexpected pair {p}" for p in self.extra]
        out += [f"path for {p} has wrong endpoints" for p in self.bad_endpoints]
        out += [f"path for {p} uses non-arc {a}" for p, a in self.bad_arcs]
        out += [f"path for {p} is not simple" for p in self.non_simple]
        return out


def validate_routing(g: Graph, r: Routing) -> ValidationReport:
    """Itemize every completeness, endpoint, arc and simplicity violation."""
    report = ValidationReport()
    expected = {(s, t) for s in range(g.n) for t in range(g.n) if s != t}
    report.missing = sorted(expected - r.paths.keys())
    report.extra = sorted(r.paths.keys() - expected)
    for pair in sorted(expected & r.paths.keys()):
        path = r.paths[pair]
        if len(path) < 2 or path[0] != pair[0] or path[-1] != pair[1]:
            report.bad_endpoints.append(pair)
        for a in zip(path, path[1:]):
            if a not in g.arcs:
                report.bad_arcs.append((pair, a))
        if len(set(path)) != len(path):
            report.non_simple.append(pair)
    return report


def check_routing(g: Graph, r: Routing) -> None:
    report = validate_routing(g, r)
    if not report.valid:
        raise InvalidRouting(report.violations())


@dataclass(frozen=True)
class RoutingClass:
    minimal: bool
    symmetric: bool
    consistent: bool


def classify_routing(g: Graph, r: Routing, dist: DistanceMatrix | None = None) -> RoutingClass:
    check_routing(g, r)
    dist = dist or distances(g)
    paths = r.paths
    minimal = all(len(p) - 1 == dist[pair] for pair, p in paths.items())
    symmetric = all(paths[(t, s)] == p[::-1] for (s, t), p in paths.items())
    consistent = True
    for (s, t), p in paths.items():
        for i in range(1, len(p) - 1):
            z = p[i]
            if paths[(s, z)] != p[: i + 1] or paths[(z, t)] != p[i:]:
                consistent = False
                break
        if not consistent:
            break
    return RoutingClass(minimal, symmetric, consistent)


@dataclass(frozen=True)
class LoadProfile:
    vertex_load: tuple
    edge_load: dict
    xi: int
    pi: int

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for v, load in enumerate(self.vertex_load):
            w.writerow(["vertex", v, load])
        for (u, v), load in sorted(self.edge_load.items()):
            w.writerow(["edge", u, v, load])
        return buf.getvalue()


def edge_key(g: Graph, u: int, v: int) -> tuple[int, int]:
    if g.directed or u < v:
        return (u, v)
    return (v, u)


def load_profile(g: Graph, r: Routing, validate: bool = True) -> LoadProfile:
    """Transit load per vertex and traversal count per edge (per arc if directed)."""
    if validate:
        check_routing(g, r)
    vload = [0] * g.n
    eload = {e: 0 for e in g.edges()}
    for p in r.paths.values():
        for v in p[1:-1]:
            vload[v] += 1
        for u, v in zip(p, p[1:]):
            eload[edge_key(g, u, v)] += 1
    return LoadProfile(tuple(vload), eload, max(vload), max(eload.values()) if eload else 0)


# ---------------------------------------------------------------------------
# shortest-path routings
# ---------------------------------------------------------------------------

def _lexmin_routing(g: Graph, dist: DistanceMatrix) -> dict:
    # next hop toward t = lowest-labeled neighbor one step closer: this yields
    # the lexicographically smallest shortest path, which is consistent
    d = dist.d
    paths = {}
    for s in range(g.n):
        for t in range(g.n):
            if s == t:
                continue
            path = [s]
            u = s
            while u != t:
                u = next(w for w in g.out_adj[u] if d[w][t] == d[u][t] - 1)
                path.append(u)
            paths[(s, t)] = tuple(path)
    return paths


def _load_aware_routing(g: Graph, dist: DistanceMatrix) -> dict | None:
    # pairs in order of distance; each path extends an already-routed suffix
    # R(w, t) and must agree with every routed prefix R(s, z)
    d = dist.d
    n = g.n
    vload = [0] * n
    eload = {}
    paths = {}
    pairs = sorted(((d[s][t], s, t) for s in range(n) for t in range(n) if s != t))
    for k, s, t in pairs:
        if k == 1:
            paths[(s, t)] = (s, t)
            e = edge_key(g, s, t)
            eload[e] = eload.get(e, 0) + 1
            continue
        best = None
        for w in g.out_adj[s]:
            if d[w][t] != k - 1:
                continue
            cand = (s,) + paths[(w, t)]
            if any(paths[(s, cand[i])] != cand[: i + 1] for i in range(2, k)):
                continue
            inner = [vload[v] for v in cand[1:-1]]
            hops = [eload.get(edge_key(g, a, b), 0) for a, b in zip(cand, cand[1:])]
            key = (max(inner), max(hops), sum(inner) + sum(hops), w)
            if best is None or key < best[0]:
                best = (key, cand)
        if best is None:
            return None
        cand = best[1]
        paths[(s, t)] = cand
        for v in cand[1:-1]:
            vload[v] += 1
        for a, b in zip(cand, cand[1:]):
            e = edge_key(g, a, b)
            eload[e] = eload.get(e, 0) + 1
    return paths


def shortest_path_routing(g: Graph, tie_rule: str = LOWEST_LABEL,
                          dist: DistanceMatrix | None = None) -> Routing:
    """Deterministic minimal and consistent routing.

    ``lowest-neighbor-label`` always steps to the smallest-labeled neighbor
    that is one hop closer to the destination. ``load-aware-greedy`` routes
    pairs by increasing distance and, among the consistent extensions of
    already-routed paths, picks the parent whose interior vertices and edges
    currently carry the least load. If no consistent extension exists it
    falls back to the lowest-label routing.
    """
    if tie_rule not in TIE_RULES:
        raise ValueError(f"unknown tie rule {tie_rule!r}; expected one of {TIE_RULES}")
    dist = dist or distances(g)
    paths = None
    if tie_rule == LOAD_AWARE:
        paths = _load_aware_routing(g, dist)
    if paths is None:
        paths = _lexmin_routing(g, dist)
    return Routing(paths)
