import json

import pytest
from hypothesis import given, settings

from conftest import complete, connected_graphs, cycle, wheel_routing
from fwdix.families import path, wheel
from fwdix.graph import build_graph, distances
from fwdix.routing import (LOAD_AWARE, LOWEST_LABEL, InvalidRouting, Routing, classify_routing,
                           load_profile, load_routing, make_routing, routing_from_json,
                           save_routing, shortest_path_routing, validate_routing)
from fwdix.solver import lower_bound_A, lower_bound_B


def edge_routing(g):
    return make_routing({(u, v): (u, v) for u, v in g.arcs})


def test_single_edge_routing_on_triangle_is_valid():
    assert validate_routing(complete(3), edge_routing(complete(3))).valid


def test_missing_pair_is_named():
    r = dict(edge_routing(complete(3)).paths)
    del r[(2, 0)]
    report = validate_routing(complete(3), make_routing(r))
    assert report.missing == [(2, 0)]
    assert "missing pair (2, 0)" in report.violations()


def test_non_simple_path():
    g = complete(3)
    paths = dict(edge_routing(g).paths)
    paths[(0, 2)] = (0, 1, 0, 2)
    report = validate_routing(g, make_routing(paths))
    assert report.non_simple == [(0, 2)]


def test_bad_arcs_and_endpoints():
    g = path(3)
    paths = dict(shortest_path_routing(g).paths)
    paths[(0, 2)] = (0, 2)
    paths[(1, 0)] = (1, 2)
    report = validate_routing(g, make_routing(paths))
    assert report.bad_arcs == [((0, 2), (0, 2))]
    assert report.bad_endpoints == [(1, 0)]
    with pytest.raises(InvalidRouting) as exc:
        load_profile(g, make_routing(paths))
    assert len(exc.value.violations) == 2


def test_extra_pair_reported():
    g = complete(2)
    r = make_routing({(0, 1): (0, 1), (1, 0): (1, 0), (0, 0): (0,)})
    assert validate_routing(g, r).extra == [(0, 0)]


def test_shortest_path_routing_is_minimal():
    g = wheel(7)
    assert classify_routing(g, shortest_path_routing(g)).minimal


def test_modified_wheel_routing_is_not_minimal():
    cls = classify_routing(wheel(7), wheel_routing(modified=True))
    assert not cls.minimal


def test_edge_routing_on_complete_graph_has_all_properties():
    g = complete(5)
    cls = classify_routing(g, edge_routing(g))
    assert (cls.minimal, cls.symmetric, cls.consistent) == (True, True, True)


def test_inconsistent_routing_detected():
    from fwdix.families import hypercube
    g = hypercube(3)
    paths = dict(shortest_path_routing(g).paths)
    paths[(0, 7)] = (0, 1, 3, 7)
    paths[(0, 3)] = (0, 2, 3)
    cls = classify_routing(g, make_routing(paths))
    assert cls.minimal and not cls.consistent and not cls.symmetric


def test_wheel_minimal_routing_loads():
    prof = load_profile(wheel(7), wheel_routing())
    assert prof.vertex_load[6] == 6
    assert prof.vertex_load[:6] == (2,) * 6
    assert prof.xi == 6


def test_wheel_modified_routing_loads():
    prof = load_profile(wheel(7), wheel_routing(modified=True))
    assert prof.xi == 4
    assert prof.vertex_load == (3, 3, 2, 3, 3, 2, 4)


def test_triangle_edge_loads():
    prof = load_profile(complete(3), edge_routing(complete(3)))
    assert prof.vertex_load == (0, 0, 0)
    assert set(prof.edge_load.values()) == {2}
    assert prof.pi == 2


def test_directed_loads_are_per_arc():
    g = build_graph(3, [(0, 1), (1, 2), (2, 0)], directed=True)
    prof = load_profile(g, shortest_path_routing(g))
    assert set(prof.edge_load) == set(g.arcs)
    assert prof.xi == 1 and prof.pi == 3


def test_path_p4():
    prof = load_profile(path(4), shortest_path_routing(path(4)))
    assert (prof.xi, prof.pi) == (4, 8)


def test_c5_unique_minimal_routing():
    for rule in (LOWEST_LABEL, LOAD_AWARE):
        prof = load_profile(cycle(5), shortest_path_routing(cycle(5), rule))
        assert prof.xi == 2
        assert prof.vertex_load == (2,) * 5


def test_c4_load_aware():
    prof = load_profile(cycle(4), shortest_path_routing(cycle(4), LOAD_AWARE))
    assert (prof.xi, prof.pi) == (1, 4)


def test_unknown_tie_rule():
    with pytest.raises(ValueError):
        shortest_path_routing(cycle(4), "random")


def test_csv_layout():
    text = load_profile(path(3), shortest_path_routing(path(3))).to_csv()
    assert text.splitlines() == ["vertex,0,0", "vertex,1,2", "vertex,2,0", "edge,0,1,4", "edge,1,2,4"]


def test_routing_json_round_trip(tmp_path):
    r = wheel_routing(modified=True)
    f = tmp_path / "r.json"
    save_routing(r, f, "W7")
    data = json.loads(f.read_text())
    assert data["graph"] == "W7" and len(data["pairs"]) == 42
    assert {"src", "dst", "path"} == set(data["pairs"][0])
    assert load_routing(f) == r
    assert routing_from_json(r.to_json()) == r


def test_with_paths():
    r = wheel_routing()
    r2 = r.with_paths({(2, 5): (2, 1, 0, 5)})
    assert r2[(2, 5)] == (2, 1, 0, 5) and r[(2, 5)] == (2, 6, 5)
    assert isinstance(r2, Routing) and len(r2) == 42


def _check_conservation(g, r):
    prof = load_profile(g, r)
    hops = sum(len(p) - 1 for p in r.paths.values())
    assert sum(prof.vertex_load) == hops - len(r.paths)
    assert sum(prof.edge_load.values()) == hops
    assert prof.xi >= lower_bound_A(g)[0]
    assert prof.pi >= lower_bound_B(g)[0]
    return prof


@settings(max_examples=80, deadline=None)
@given(connected_graphs(min_n=2, max_n=8))
def test_shortest_path_routings_are_minimal_consistent_and_conserve_load(g):
    dist = distances(g)
    for rule in (LOWEST_LABEL, LOAD_AWARE):
        r = shortest_path_routing(g, rule, dist)
        cls = classify_routing(g, r, dist)
        assert cls.minimal and cls.consistent
        prof = _check_conservation(g, r)
        assert sum(prof.vertex_load) == dist.total - g.n * (g.n - 1)
        assert sum(prof.vertex_load) == lower_bound_A(g, dist)[0] * g.n


@settings(max_examples=60, deadline=None)
@given(connected_graphs(min_n=2, max_n=7))
def test_symmetric_routing_has_even_vertex_loads(g):
    base = shortest_path_routing(g)
    sym = make_routing({(s, t): (p if s < t else base[(t, s)][::-1]) for (s, t), p in base.items()})
    assert classify_routing(g, sym).symmetric
    prof = _check_conservation(g, sym)
    assert all(x % 2 == 0 for x in prof.vertex_load)
