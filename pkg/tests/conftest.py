import itertools

import networkx as nx
import pytest
from hypothesis import strategies as st

from fwdix.graph import build_graph
from fwdix.routing import make_routing


def cycle(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


def complete(n):
    return build_graph(n, itertools.combinations(range(n), 2), name=f"K{n}")


def to_nx(g):
    h = nx.DiGraph() if g.directed else nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.arcs if g.directed else g.edges())
    return h


def wheel_routing(modified=False):
    """The worked-example routings on W7 (rim 0..5, hub 6)."""
    hub = 6
    paths = {}
    for u in range(6):
        for v in range(6):
            if u == v:
                continue
            k = (v - u) % 6
            if k in (1, 5):
                paths[(u, v)] = (u, v)
            elif k == 2:
                paths[(u, v)] = (u, (u + 1) % 6, v)
            elif k == 4:
                paths[(u, v)] = (u, (u - 1) % 6, v)
            else:
                paths[(u, v)] = (u, hub, v)
    for u in range(6):
        paths[(u, hub)] = (u, hub)
        paths[(hub, u)] = (hub, u)
    if modified:
        paths[(2, 5)] = (2, 1, 0, 5)
        paths[(5, 2)] = (5, 4, 3, 2)
    return make_routing(paths)


@st.composite
def connected_graphs(draw, min_n=2, max_n=7):
    """Random connected graph: a random spanning tree plus random extra edges."""
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges.add((u, v))
    others = [e for e in itertools.combinations(range(n), 2) if e not in edges]
    if others:
        extra = draw(st.lists(st.sampled_from(others), unique=True, max_size=len(others)))
        edges.update(extra)
    return build_graph(n, sorted(edges))


@pytest.fixture
def w7():
    from fwdix.families import wheel
    return wheel(7)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
