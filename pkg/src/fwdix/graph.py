"""Graph representation, hop metrics, connectivity and small-graph enumeration.

Vertices are dense integer labels ``0..n-1``. Undirected graphs store every
edge as two opposite arcs so that one adjacency API serves both kinds.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

ENUMERATION_LIMIT = 6


class GraphError(ValueError):
    pass


class MalformedEdge(GraphError):
    pass


class DisconnectedGraph(GraphError):
    pass


class MixedDirectedness(GraphError):
    pass


class LimitExceeded(GraphError):
    pass


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    arcs: frozenset
    directed: bool = False
    name: str | None = None
    labels: tuple | None = field(default=None, compare=False)
    out_adj: tuple = field(init=False, repr=False, compare=False)
    in_adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        out = [[] for _ in range(self.n)]
        inn = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            out[u].append(v)
            inn[v].append(u)
        object.__setattr__(self, "out_adj", tuple(tuple(sorted(a)) for a in out))
        object.__setattr__(self, "in_adj", tuple(tuple(sorted(a)) for a in inn))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n, self.directed, self.arcs) == (other.n, other.directed, other.arcs)

    def __hash__(self):
        return hash((self.n, self.directed, self.arcs))

    def __repr__(self):
        kind = "Digraph" if self.directed else "Graph"
        label = f" {self.name!r}" if self.name else ""
        return f"<{kind}{label} n={self.n} edges={self.num_edges}>"

    @property
    def num_edges(self) -> int:
        return len(self.arcs) if self.directed else len(self.arcs) // 2

    def neighbors(self, v: int) -> tuple:
        return self.out_adj[v]

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def degree(self, v: int) -> int:
        """Out-degree; for undirected graphs this is the ordinary degree."""
        return len(self.out_adj[v])

    @property
    def max_degree(self) -> int:
        if self.directed:
            return max(max(len(a), len(b)) for a, b in zip(self.out_adj, self.in_adj))
        return max(len(a) for a in self.out_adj)

    @property
    def min_degree(self) -> int:
        if self.directed:
            return min(min(len(a), len(b)) for a, b in zip(self.out_adj, self.in_adj))
        return min(len(a) for a in self.out_adj)

    def edges(self) -> list[tuple[int, int]]:
        """Edge list with each undirected edge once (u < v), sorted."""
        if self.directed:
            return sorted(self.arcs)
        return sorted((u, v) for u, v in self.arcs if u < v)

    def edge_index(self) -> dict[tuple[int, int], int]:
        """Map every arc to the id of the edge (or arc) it belongs to."""
        index = {}
        for i, (u, v) in enumerate(self.edges()):
            index[(u, v)] = i
            if not self.directed:
                index[(v, u)] = i
        return index

    def is_regular(self) -> bool:
        return self.max_degree == self.min_degree

    def relabeled(self, name: str | None = None, labels: Sequence | None = None) -> "Graph":
        return Graph(self.n, self.arcs, self.directed, name, tuple(labels) if labels else self.labels)

    def to_json(self) -> dict:
        data = {"directed": self.directed, "n": self.n, "edges": [list(e) for e in self.edges()]}
        if self.name:
            data = {"name": self.name, **data}
        return data


def _reachable(n: int, adj: Sequence[Sequence[int]], start: int = 0) -> int:
    seen = [False] * n
    seen[start] = True
    stack = [start]
    count = 1
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                stack.append(v)
    return count


def build_graph(n: int, arcs: Iterable[Sequence[int]], directed: bool = False,
                name: str | None = None, labels: Sequence | None = None) -> Graph:
    """Validate an arc list and return a :class:`Graph`.

    Undirected input may list each edge once or twice; it is symmetrized.
    Raises :class:`MalformedEdge` for loops, out-of-range labels and (directed)
    duplicate arcs, and :class:`DisconnectedGraph` unless the result is
    connected (strongly connected when ``directed``).
    """
    if n < 1:
        raise MalformedEdge(f"graph needs at least one vertex, got n={n}")
    arcset = set()
    for pair in arcs:
        if len(pair) != 2:
            raise MalformedEdge(f"edge {pair!r} is not a pair")
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise MalformedEdge(f"edge ({u}, {v}) has a label outside 0..{n - 1}")
        if u == v:
            raise MalformedEdge(f"self-loop at vertex {u}")
        if directed and (u, v) in arcset:
            raise MalformedEdge(f"duplicate arc ({u}, {v})")
        arcset.add((u, v))
        if not directed:
            arcset.add((v, u))
    g = Graph(n, frozenset(arcset), directed, name, tuple(labels) if labels is not None else None)
    if _reachable(n, g.out_adj) != n:
        raise DisconnectedGraph(f"graph {name or ''} is not connected".replace("  ", " "))
    if directed and _reachable(n, g.in_adj) != n:
        raise DisconnectedGraph(f"digraph {name or ''} is not strongly connected".replace("  ", " "))
    return g


def graph_from_json(data: dict) -> Graph:
    return build_graph(data["n"], data.get("edges", []), bool(data.get("directed", False)),
                       data.get("name"))


def load_graph(path) -> Graph:
    with open(path) as fh:
        return graph_from_json(json.load(fh))


def save_graph(g: Graph, path) -> None:
    with open(path, "w") as fh:
        json.dump(g.to_json(), fh)
        fh.write("\n")


# ---------------------------------------------------------------------------
# distances
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DistanceMatrix:
    d: tuple
    diameter: int
    row_sums: tuple

    def __getitem__(self, key):
        u, v = key
        return self.d[u][v]

    @property
    def total(self) -> int:
        return sum(self.row_sums)

    def is_row_regular(self) -> bool:
        return len(set(self.row_sums)) == 1


def bfs_from(g: Graph, source: int, adj=None) -> list[int]:
    adj = g.out_adj if adj is None else adj
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def distances(g: Graph) -> DistanceMatrix:
    rows = tuple(tuple(bfs_from(g, s)) for s in range(g.n))
    return DistanceMatrix(rows, max(max(r) for r in rows), tuple(sum(r) for r in rows))


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------

def cartesian_product(g: Graph, h: Graph, name: str | None = None) -> Graph:
    """Cartesian product; vertex ``(u, x)`` gets label ``u * h.n + x``."""
    if g.directed != h.directed:
        raise MixedDirectedness("cannot multiply a graph with a digraph")
    m = h.n
    arcs = []
    for u in range(g.n):
        for x, y in h.arcs:
            arcs.append((u * m + x, u * m + y))
    for u, v in g.arcs:
        for x in range(m):
            arcs.append((u * m + x, v * m + x))
    labels = None
    if g.labels is not None or h.labels is not None:
        gl = g.labels or tuple(range(g.n))
        hl = h.labels or tuple(range(h.n))
        labels = [_flatten(a) + _flatten(b) for a in gl for b in hl]
    if name is None and g.name and h.name:
        name = f"{g.name}x{h.name}"
    return build_graph(g.n * m, arcs, g.directed, name, labels)


def _flatten(label) -> tuple:
    return tuple(label) if isinstance(label, tuple) else (label,)


def product_of(factors: Sequence[Graph], name: str | None = None) -> Graph:
    result = factors[0]
    for f in factors[1:]:
        result = cartesian_product(result, f)
    return result.relabeled(name) if name else result


# ---------------------------------------------------------------------------
# connectivity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConnectivityReport:
    kappa: int
    lam: int

    @property
    def lambda_(self) -> int:
        return self.lam


def _unit_max_flow(num: int, cap: dict, source: int, sink: int, limit: int) -> int:
    """Augmenting-path max flow on unit-ish capacities, stops at ``limit``."""
    adj = [[] for _ in range(num)]
    for (a, b) in cap:
        adj[a].append(b)
        adj[b].append(a)
    residual = dict(cap)
    flow = 0
    while flow < limit:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in adj[a]:
                if b not in parent and residual.get((a, b), 0) > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            break
        b = sink
        while parent[b] is not None:
            a = parent[b]
            residual[(a, b)] -= 1
            residual[(b, a)] = residual.get((b, a), 0) + 1
            b = a
        flow += 1
    return flow


def local_arc_connectivity(g: Graph, s: int, t: int, limit: int | None = None) -> int:
    cap = {}
    for u, v in g.arcs:
        cap[(u, v)] = cap.get((u, v), 0) + 1
    return _unit_max_flow(g.n, cap, s, t, g.n if limit is None else limit)


def local_vertex_connectivity(g: Graph, s: int, t: int, limit: int | None = None) -> int:
    """Internally disjoint s-t paths for non-adjacent s, t (vertex splitting)."""
    # vertex v becomes v_in = 2v, v_out = 2v + 1
    cap = {}
    for v in range(g.n):
        cap[(2 * v, 2 * v + 1)] = g.n
    for v in range(g.n):
        if v not in (s, t):
            cap[(2 * v, 2 * v + 1)] = 1
    for u, v in g.arcs:
        cap[(2 * u + 1, 2 * v)] = g.n
    return _unit_max_flow(2 * g.n, cap, 2 * s + 1, 2 * t, g.n if limit is None else limit)


def connectivity(g: Graph) -> ConnectivityReport:
    """Vertex and edge connectivity (strong versions for digraphs)."""
    n = g.n
    if n == 1:
        return ConnectivityReport(0, 0)
    delta = g.min_degree
    lam = delta
    for s in range(n):
        for t in range(n):
            if s != t and (g.directed or s < t):
                lam = min(lam, local_arc_connectivity(g, s, t, lam))
    kappa = n - 1
    for s in range(n):
        for t in range(n):
            if s == t or g.has_arc(s, t) or (not g.directed and t < s):
                continue
            kappa = min(kappa, local_vertex_connectivity(g, s, t, kappa))
    return ConnectivityReport(kappa, lam)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _pair_list(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def _mask_connected(n: int, nbr: list[int]) -> bool:
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= nbr[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << n) - 1


def canonical_form(n: int, edges: Iterable[tuple[int, int]]) -> tuple:
    """Smallest sorted edge tuple over relabelings that respect a degree refinement."""
    edges = list(edges)
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    color = [len(adj[v]) for v in range(n)]
    for _ in range(n):
        sig = [(color[v], tuple(sorted(color[w] for w in adj[v]))) for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[sig[v]] for v in range(n)]
        if len(set(new)) == len(set(color)):
            color = new
            break
        color = new
    cells = {}
    for v in range(n):
        cells.setdefault(color[v], []).append(v)
    ordered = [cells[c] for c in sorted(cells)]
    best = None
    for combo in itertools.product(*(itertools.permutations(c) for c in ordered)):
        order = [v for cell in combo for v in cell]
        pos = {v: i for i, v in enumerate(order)}
        form = tuple(sorted(tuple(sorted((pos[u], pos[v]))) for u, v in edges))
        if best is None or form < best:
            best = form
    return best


def enumerate_connected_graphs(n: int, max_degree: int | None = None, *,
                               min_degree: int | None = None, dedup: bool = True,
                               limit: int = ENUMERATION_LIMIT,
                               shard: tuple[int, int] = (0, 1)) -> Iterator[Graph]:
    """Yield connected simple graphs on ``n`` labeled vertices.

    ``max_degree``/``min_degree`` filter on the exact maximum/minimum degree.
    With ``dedup`` only the first labeled representative of each isomorphism
    class is yielded. ``shard=(i, k)`` restricts to edge bitmasks congruent to
    ``i`` mod ``k`` so that disjoint workers can split the space; dedup is then
    per shard.
    """
    if n > limit:
        raise LimitExceeded(f"n={n} exceeds the enumeration limit {limit}")
    if n == 1:
        if max_degree in (None, 0) and min_degree in (None, 0) and shard[0] == 0:
            yield build_graph(1, [])
        return
    pairs = _pair_list(n)
    seen = set()
    index, stride = shard
    for mask in range(index, 1 << len(pairs), stride):
        nbr = [0] * n
        deg = [0] * n
        for i, (u, v) in enumerate(pairs):
            if mask >> i & 1:
                nbr[u] |= 1 << v
                nbr[v] |= 1 << u
                deg[u] += 1
                deg[v] += 1
        if max_degree is not None and max(deg) != max_degree:
            continue
        if min_degree is not None and min(deg) != min_degree:
            continue
        if not _mask_connected(n, nbr):
            continue
        edges = [p for i, p in enumerate(pairs) if mask >> i & 1]
        if dedup:
            key = canonical_form(n, edges)
            if key in seen:
                continue
            seen.add(key)
        yield build_graph(n, edges)
