"""Exact and heuristic computation of the vertex and edge forwarding indices.

The exact solver assigns one candidate path to every ordered pair by
depth-first branch and bound. Each round asks for a routing whose maximum
load is strictly below the incumbent; a round that finds none proves the
incumbent optimal. Pruning uses residual capacities, a total-slack bound and
loads forced by pairs whose remaining candidates all share a resource.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .graph import DistanceMatrix, Graph, distances
from .routing import (LOAD_AWARE, LOWEST_LABEL, Routing, edge_key, load_profile,
                      shortest_path_routing)

VERTEX = "vertex"
EDGE = "edge"
MINIMAL = "minimal"
GENERAL = "general"

OPTIMAL = "optimal"
UPPER_BOUND = "upper-bound"
LOWER_BOUND_ONLY = "lower-bound-only"


class NotRowRegular(ValueError):
    pass


class BudgetExhausted(RuntimeError):
    pass


@dataclass
class SearchLimits:
    max_path_length: int | None = None
    max_nodes: int = 5_000_000
    time_budget: float | None = 120.0

    def __post_init__(self):
        for name in ("max_path_length", "max_nodes", "time_budget"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")


@dataclass
class SolveResult:
    objective: str
    mode: str
    value: int
    status: str
    lower_bound: int
    certificate: Routing | None = None
    nodes: int = 0
    elapsed: float = 0.0

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL

    def to_json(self, certificate_file: str | None = None) -> dict:
        data = {"objective": self.objective, "mode": self.mode, "value": self.value,
                "status": self.status, "lowerBound": self.lower_bound, "nodes": self.nodes}
        if certificate_file:
            data["certificateFile"] = certificate_file
        return data


# ---------------------------------------------------------------------------
# analytic bounds
# ---------------------------------------------------------------------------

def lower_bound_A(g: Graph, dist: DistanceMatrix | None = None) -> tuple[Fraction, int]:
    """Average transit demand per vertex, with its ceiling."""
    dist = dist or distances(g)
    value = Fraction(dist.total - g.n * (g.n - 1), g.n)
    return value, math.ceil(value)


def lower_bound_B(g: Graph, dist: DistanceMatrix | None = None) -> tuple[Fraction, int]:
    """Average number of routed pairs per edge (per arc for digraphs), with its ceiling."""
    dist = dist or distances(g)
    value = Fraction(dist.total, g.num_edges)
    return value, math.ceil(value)


def transitive_formula(g: Graph, dist: DistanceMatrix | None = None) -> int:
    """``rowSum - (n - 1)``, valid as the vertex index only on Cayley-type graphs.

    Raises :class:`NotRowRegular` when the distance row sums differ.
    """
    dist = dist or distances(g)
    if not dist.is_row_regular():
        raise NotRowRegular(f"row sums differ: {sorted(set(dist.row_sums))}")
    return dist.row_sums[0] - (g.n - 1)


def cut_bound_edge(g: Graph, exhaustive_limit: int = 14) -> int:
    """Lower bound on the edge index from vertex cuts.

    Every ordered pair split by ``S`` crosses the cut, so some cut edge carries
    at least ``2|S|(n-|S|)/|cut(S)|`` paths. All subsets are tried for small
    graphs, otherwise singletons and breadth-first sweeps.
    """
    if g.directed:
        raise ValueError("cut bound is defined for undirected graphs")
    n = g.n
    nbr = [sum(1 << w for w in g.out_adj[v]) for v in range(n)]

    def ratio(mask):
        size = bin(mask).count("1")
        cut = 0
        m = mask
        while m:
            low = m & -m
            cut += bin(nbr[low.bit_length() - 1] & ~mask).count("1")
            m ^= low
        return -(-2 * size * (n - size) // cut)

    best = 0
    if n <= exhaustive_limit:
        for mask in range(1, 1 << (n - 1)):
            best = max(best, ratio(mask))
        return best if n > 1 else 0
    for v in range(n):
        best = max(best, ratio(1 << v))
    for start in range(n):
        order = [start]
        seen = {start}
        i = 0
        while i < len(order):
            for w in g.out_adj[order[i]]:
                if w not in seen:
                    seen.add(w)
                    order.append(w)
            i += 1
        mask = 0
        for v in order[:-1]:
            mask |= 1 << v
            best = max(best, ratio(mask))
    return best


def _resource_ids(g: Graph, objective: str):
    if objective == VERTEX:
        return g.n, None
    index = g.edge_index()
    return g.num_edges, index


def _path_resources(path, objective, index):
    if objective == VERTEX:
        return path[1:-1]
    return [index[(a, b)] for a, b in zip(path, path[1:])]


# ---------------------------------------------------------------------------
# local search
# ---------------------------------------------------------------------------

def _bottleneck_path(g, s, t, loads, objective, index, max_len):
    best = {s: (0, 0, 0)}
    parent = {s: None}
    heap = [((0, 0, 0), s)]
    done = set()
    while heap:
        key, u = heapq.heappop(heap)
        if u in done or best.get(u) != key:
            continue
        done.add(u)
        if u == t:
            break
        b, total, hops = key
        if hops >= max_len:
            continue
        for w in g.out_adj[u]:
            if w in done:
                continue
            if objective == VERTEX:
                if w == t:
                    nk = (b, total, hops + 1)
                else:
                    c = loads[w] + 1
                    nk = (max(b, c), total + c, hops + 1)
            else:
                c = loads[index[(u, w)]] + 1
                nk = (max(b, c), total + c, hops + 1)
            if w not in best or nk < best[w]:
                best[w] = nk
                parent[w] = u
                heapq.heappush(heap, (nk, w))
    if t not in done:
        return None
    path = [t]
    while path[-1] != s:
        path.append(parent[path[-1]])
    return tuple(reversed(path))


def heuristic_index(g: Graph, objective: str = VERTEX, iterations: int = 200,
                    seed_rule: str = LOAD_AWARE, max_path_length: int | None = None,
                    dist: DistanceMatrix | None = None) -> SolveResult:
    """Local search from a shortest-path routing.

    Repeatedly takes a pair routed through a most-loaded resource and moves it
    to a minimum-bottleneck path (any length up to ``max_path_length``). A move
    is kept when the load vector sorted in descending order decreases
    lexicographically.
    """
    start = time.perf_counter()
    dist = dist or distances(g)
    max_len = max_path_length or g.n - 1
    lb = (lower_bound_A if objective == VERTEX else lower_bound_B)(g, dist)[1]
    routing = shortest_path_routing(g, seed_rule, dist)
    size, index = _resource_ids(g, objective)
    paths = dict(routing.paths)
    loads = [0] * size
    users = [set() for _ in range(size)]
    for pair, p in paths.items():
        for r in _path_resources(p, objective, index):
            loads[r] += 1
            users[r].add(pair)
    moves = 0
    for _ in range(iterations):
        top = max(loads) if loads else 0
        if top <= lb:
            break
        vector = sorted(loads, reverse=True)
        hot = [r for r in range(size) if loads[r] == top]
        tried = sorted({pair for r in hot for pair in users[r]},
                       key=lambda pr: (-len(paths[pr]), pr))
        improved = False
        for pair in tried:
            old = paths[pair]
            old_res = _path_resources(old, objective, index)
            for r in old_res:
                loads[r] -= 1
            new = _bottleneck_path(g, pair[0], pair[1], loads, objective, index, max_len)
            if new is not None and new != old:
                new_res = _path_resources(new, objective, index)
                for r in new_res:
                    loads[r] += 1
                if sorted(loads, reverse=True) < vector:
                    for r in old_res:
                        users[r].discard(pair)
                    for r in new_res:
                        users[r].add(pair)
                    paths[pair] = new
                    improved = True
                    moves += 1
                    break
                for r in new_res:
                    loads[r] -= 1
            for r in old_res:
                loads[r] += 1
        if not improved:
            break
    value = max(loads) if loads else 0
    return SolveResult(objective, GENERAL, value, UPPER_BOUND, lb, Routing(paths), moves,
                       time.perf_counter() - start)


# ---------------------------------------------------------------------------
# exact branch and bound
# ---------------------------------------------------------------------------

def _shortest_paths(g, dist, s, t):
    d = dist.d
    out = []
    path = [s]

    def walk(u):
        if u == t:
            out.append(tuple(path))
            return
        for w in g.out_adj[u]:
            if d[w][t] == d[u][t] - 1:
                path.append(w)
                walk(w)
                path.pop()

    walk(s)
    return out


def _simple_paths(g, s, t, max_len, induced):
    out = []
    path = [s]
    on = [False] * g.n
    on[s] = True
    arcs = g.arcs

    def walk(u):
        if len(path) > max_len:
            return
        for w in g.out_adj[u]:
            if on[w]:
                continue
            # a forward chord from an earlier vertex gives a path with fewer interior vertices
            if induced and any((p, w) in arcs for p in path[:-1]):
                continue
            if w == t:
                out.append(tuple(path) + (t,))
                continue
            path.append(w)
            on[w] = True
            walk(w)
            on[w] = False
            path.pop()

    walk(s)
    return out


def _popcount(x):
    return bin(x).count("1")


@dataclass
class _Candidates:
    paths: list
    masks: list
    costs: list


def _candidate_pool(g, dist, s, t, objective, mode, max_len, index):
    if mode == MINIMAL:
        raw = _shortest_paths(g, dist, s, t)
    else:
        raw = _simple_paths(g, s, t, max_len, induced=(objective == VERTEX))
    items = []
    for p in raw:
        mask = 0
        for r in _path_resources(p, objective, index):
            mask |= 1 << r
        items.append((_popcount(mask), len(p), p, mask))
    items.sort()
    keep = []
    if objective == VERTEX:
        # only paths whose interior set is inclusion-minimal can matter
        for c, ln, p, mask in items:
            if any(km & mask == km for _, _, _, km in keep):
                continue
            keep.append((c, ln, p, mask))
    else:
        keep = items
    return _Candidates([k[2] for k in keep], [k[3] for k in keep], [k[0] for k in keep])


class _Search:
    def __init__(self, size, variables, pools, partner, base_loads, limits, deadline):
        self.size = size
        self.variables = variables
        self.pools = pools
        self.partner = partner
        self.base = base_loads
        self.max_nodes = limits.max_nodes
        self.deadline = deadline
        self.nodes = 0

    def run(self, cap):
        loads = list(self.base)
        if any(x > cap for x in loads):
            return None
        choice = [None] * len(self.variables)
        unassigned = set(range(len(self.variables)))
        found = self._dfs(cap, loads, choice, unassigned)
        return found

    def _domain(self, v, full, choice):
        pool = self.pools[v]
        masks = pool.masks
        lo, hi = 0, len(masks)
        p = self.partner[v]
        if p is not None and choice[p] is not None:
            # the pair (s,t)/(t,s) is interchangeable; order the two choices
            if v < p:
                hi = choice[p] + 1
            else:
                lo = choice[p]
        return [i for i in range(lo, hi) if not masks[i] & full]

    def _dfs(self, cap, loads, choice, unassigned):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetExhausted("node budget exhausted")
        if self.deadline is not None and self.nodes & 255 == 0 and time.perf_counter() > self.deadline:
            raise BudgetExhausted("time budget exhausted")
        if not unassigned:
            return list(choice)
        full = 0
        slack = 0
        for r, x in enumerate(loads):
            if x >= cap:
                full |= 1 << r
            else:
                slack += cap - x
        best_v = None
        best_dom = None
        need = 0
        forced = [0] * self.size
        for v in sorted(unassigned):
            dom = self._domain(v, full, choice)
            if not dom:
                return None
            pool = self.pools[v]
            need += min(pool.costs[i] for i in dom)
            common = -1
            for i in dom:
                common &= pool.masks[i]
            while common:
                low = common & -common
                r = low.bit_length() - 1
                forced[r] += 1
                if loads[r] + forced[r] > cap:
                    return None
                common ^= low
            if best_dom is None or len(dom) < len(best_dom):
                best_v, best_dom = v, dom
        if need > slack:
            return None
        pool = self.pools[best_v]

        def bottleneck(i):
            m = pool.masks[i]
            top = 0
            while m:
                low = m & -m
                top = max(top, loads[low.bit_length() - 1])
                m ^= low
            return (top, pool.costs[i], i)

        unassigned.discard(best_v)
        for i in sorted(best_dom, key=bottleneck):
            m = pool.masks[i]
            bits = []
            while m:
                low = m & -m
                r = low.bit_length() - 1
                loads[r] += 1
                bits.append(r)
                m ^= low
            choice[best_v] = i
            found = self._dfs(cap, loads, choice, unassigned)
            for r in bits:
                loads[r] -= 1
            if found is not None:
                choice[best_v] = None
                unassigned.add(best_v)
                return found
        choice[best_v] = None
        unassigned.add(best_v)
        return None


def _best_minimal_seed(g, dist, objective):
    best = None
    for rule in (LOAD_AWARE, LOWEST_LABEL):
        r = shortest_path_routing(g, rule, dist)
        prof = load_profile(g, r, validate=False)
        value = prof.xi if objective == VERTEX else prof.pi
        if best is None or value < best[0]:
            best = (value, r)
    return best


def exact_index(g: Graph, objective: str = VERTEX, mode: str = GENERAL,
                limits: SearchLimits | None = None,
                dist: DistanceMatrix | None = None) -> SolveResult:
    """Exact xi, xi_m, pi or pi_m by branch and bound.

    Candidate pools are all shortest paths (``minimal``) or all simple paths
    of at most ``max_path_length`` edges (``general``); for the vertex
    objective only paths with inclusion-minimal interiors are kept. On budget
    exhaustion the best routing found is returned with status ``upper-bound``.
    """
    if objective not in (VERTEX, EDGE):
        raise ValueError(f"objective must be 'vertex' or 'edge', got {objective!r}")
    if mode not in (MINIMAL, GENERAL):
        raise ValueError(f"mode must be 'minimal' or 'general', got {mode!r}")
    limits = limits or SearchLimits()
    t0 = time.perf_counter()
    deadline = t0 + limits.time_budget if limits.time_budget else None
    dist = dist or distances(g)
    n = g.n
    max_len = limits.max_path_length or n - 1
    lb = (lower_bound_A if objective == VERTEX else lower_bound_B)(g, dist)[1]
    target = lb
    if objective == EDGE and not g.directed:
        target = max(lb, cut_bound_edge(g))

    if mode == MINIMAL:
        value, incumbent = _best_minimal_seed(g, dist, objective)
    else:
        h = heuristic_index(g, objective, max_path_length=max_len, dist=dist)
        value, incumbent = h.value, h.certificate
        if value > target:
            # shortest-path routings often already meet the bound; they are cheap to search
            share = replace(limits, time_budget=limits.time_budget / 4 if limits.time_budget else None,
                            max_nodes=max(1, limits.max_nodes // 4))
            m = exact_index(g, objective, MINIMAL, share, dist)
            if m.value < value:
                value, incumbent = m.value, m.certificate

    def result(status, nodes):
        return SolveResult(objective, mode, value, status, lb, incumbent, nodes,
                           time.perf_counter() - t0)

    if n < 3 or value <= target:
        return result(OPTIMAL, 0)

    size, index = _resource_ids(g, objective)
    variables = []
    pools = []
    var_of = {}
    for s in range(n):
        if deadline is not None and time.perf_counter() > deadline:
            # path pools alone used up the budget
            return result(UPPER_BOUND, 0)
        for t in range(n):
            if s == t:
                continue
            if not g.directed and s > t:
                fwd = pools[var_of[(t, s)]]
                pool = _Candidates([p[::-1] for p in fwd.paths], fwd.masks, fwd.costs)
            else:
                pool = _candidate_pool(g, dist, s, t, objective, mode, max_len, index)
            var_of[(s, t)] = len(variables)
            variables.append((s, t))
            pools.append(pool)
    base = [0] * size
    free = []
    for v, pool in enumerate(pools):
        if len(pool.masks) == 1:
            m = pool.masks[0]
            for r in range(size):
                if m >> r & 1:
                    base[r] += 1
        else:
            free.append(v)
    if any(len(p.masks) == 0 for p in pools):
        raise ValueError("some pair has no candidate path within max_path_length")
    target = max(target, max(base) if base else 0)

    sub_vars = [variables[v] for v in free]
    sub_pools = [pools[v] for v in free]
    pos = {variables[v]: i for i, v in enumerate(free)}
    partner = []
    for s, t in sub_vars:
        partner.append(None if g.directed else pos.get((t, s)))
    search = _Search(size, sub_vars, sub_pools, partner, base, limits, deadline)

    status = OPTIMAL
    try:
        while value > target:
            choice = search.run(value - 1)
            if choice is None:
                break
            paths = {variables[v]: pools[v].paths[0] for v in range(len(variables))}
            for i, c in enumerate(choice):
                paths[sub_vars[i]] = sub_pools[i].paths[c]
            candidate = Routing(paths)
            prof = load_profile(g, candidate, validate=False)
            value = prof.xi if objective == VERTEX else prof.pi
            incumbent = candidate
    except BudgetExhausted:
        status = UPPER_BOUND
    return result(status, search.nodes)
