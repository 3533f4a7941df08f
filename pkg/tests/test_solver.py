from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import complete, connected_graphs, cycle
from fwdix.families import complete_bipartite, hypercube, path, star, wheel
from fwdix.graph import build_graph, cartesian_product
from fwdix.routing import load_profile, validate_routing
from fwdix.solver import (EDGE, GENERAL, LOWER_BOUND_ONLY, MINIMAL, OPTIMAL, UPPER_BOUND, VERTEX,
                          NotRowRegular, SearchLimits, SolveResult, cut_bound_edge, exact_index,
                          heuristic_index, lower_bound_A, lower_bound_B, transitive_formula)


def test_lower_bound_a_examples():
    assert lower_bound_A(cycle(5)) == (Fraction(2), 2)
    assert lower_bound_A(complete(6)) == (Fraction(0), 0)
    assert lower_bound_A(wheel(7)) == (Fraction(18, 7), 3)


def test_lower_bound_b_examples():
    assert lower_bound_B(cycle(5)) == (Fraction(6), 6)
    assert lower_bound_B(complete(6)) == (Fraction(2), 2)
    assert lower_bound_B(hypercube(3)) == (Fraction(8), 8)


def test_transitive_formula_examples():
    assert transitive_formula(hypercube(3)) == 5
    assert transitive_formula(cartesian_product(cycle(3), cycle(3))) == 4
    assert transitive_formula(complete(5)) == 0


def test_transitive_formula_requires_row_regular():
    with pytest.raises(NotRowRegular):
        transitive_formula(wheel(7))


def test_cut_bound_examples():
    assert cut_bound_edge(star(5)) == 8
    assert cut_bound_edge(complete(6)) == 2
    assert cut_bound_edge(cycle(6)) == 9
    with pytest.raises(ValueError):
        cut_bound_edge(build_graph(3, [(0, 1), (1, 2), (2, 0)], directed=True))


def test_cut_bound_sweeps_on_large_graph():
    assert cut_bound_edge(cycle(20)) >= 2 * 10 * 10 // 2 - 20


def _assert_certified(g, res):
    assert validate_routing(g, res.certificate).valid
    prof = load_profile(g, res.certificate)
    assert (prof.xi if res.objective == VERTEX else prof.pi) == res.value
    assert res.lower_bound <= res.value


def test_c4_vertex_general():
    res = exact_index(cycle(4), VERTEX, GENERAL)
    assert res.value == 1 and res.optimal
    _assert_certified(cycle(4), res)


def test_wheel_minimal_and_general():
    g = wheel(7)
    m = exact_index(g, VERTEX, MINIMAL)
    assert (m.value, m.status) == (6, OPTIMAL)
    r = exact_index(g, VERTEX, GENERAL)
    assert (r.value, r.status) == (3, OPTIMAL)
    _assert_certified(g, m)
    _assert_certified(g, r)


def test_star_vertex():
    res = exact_index(star(5), VERTEX, GENERAL)
    assert res.value == 12 and res.optimal


@pytest.mark.parametrize("g, values", [
    (cycle(4), (1, 1, 4, 4)),
    (cycle(5), (2, 2, 6, 6)),
    (cycle(6), (4, 4, 9, 9)),
    (path(4), (4, 4, 8, 8)),
    (hypercube(3), (5, 5, 8, 8)),
    (complete_bipartite(3, 3), (2, 2, 5, 5)),
    (cartesian_product(cycle(3), cycle(3)), (4, 4, 6, 6)),
    (wheel(7), (3, 6, 6, 6)),
])
def test_frozen_exact_values(g, values):
    # values computed once by this solver and cross-checked by hand or closed form
    got = tuple(exact_index(g, obj, mode).value
                for obj, mode in [(VERTEX, GENERAL), (VERTEX, MINIMAL), (EDGE, GENERAL), (EDGE, MINIMAL)])
    assert got == values


def test_directed_cycle():
    g = build_graph(5, [(i, (i + 1) % 5) for i in range(5)], directed=True)
    assert exact_index(g, VERTEX).value == 6
    assert exact_index(g, EDGE).value == 10


def test_budget_exhaustion_reports_upper_bound():
    g = cartesian_product(cycle(3), cycle(4))
    res = exact_index(g, VERTEX, GENERAL, SearchLimits(max_nodes=1))
    assert res.status in (UPPER_BOUND, OPTIMAL)
    _assert_certified(g, res)


def test_max_path_length_restricts_general_mode():
    g = wheel(7)
    res = exact_index(g, VERTEX, GENERAL, SearchLimits(max_path_length=2))
    assert res.value == 6


def test_search_limits_validation():
    with pytest.raises(ValueError):
        SearchLimits(max_nodes=0)
    with pytest.raises(ValueError):
        SearchLimits(time_budget=-1)


def test_bad_objective_and_mode():
    with pytest.raises(ValueError):
        exact_index(cycle(4), "arc")
    with pytest.raises(ValueError):
        exact_index(cycle(4), VERTEX, "fast")


def test_heuristic_examples():
    w = heuristic_index(wheel(7), VERTEX, iterations=100)
    assert w.value <= 4 and w.status == UPPER_BOUND
    assert heuristic_index(complete(5), VERTEX).value == 0
    assert heuristic_index(cycle(6), EDGE).value == 9


def test_solve_result_json():
    res = exact_index(cycle(4))
    data = res.to_json("r.json")
    assert data == {"objective": "vertex", "mode": "general", "value": 1, "status": "optimal",
                    "lowerBound": 1, "nodes": res.nodes, "certificateFile": "r.json"}
    assert "certificateFile" not in SolveResult(VERTEX, GENERAL, 1, LOWER_BOUND_ONLY, 1).to_json()


def test_determinism():
    g = cartesian_product(cycle(3), cycle(3))
    a = exact_index(g, EDGE, GENERAL)
    b = exact_index(g, EDGE, GENERAL)
    assert a.value == b.value and a.certificate == b.certificate


@settings(max_examples=25, deadline=None)
@given(connected_graphs(min_n=2, max_n=6))
def test_bracketing_on_random_graphs(g):
    for obj in (VERTEX, EDGE):
        gen = exact_index(g, obj, GENERAL)
        mini = exact_index(g, obj, MINIMAL)
        heur = heuristic_index(g, obj)
        assert gen.optimal and mini.optimal
        assert gen.lower_bound <= gen.value <= mini.value
        assert gen.value <= heur.value
        _assert_certified(g, gen)
        _assert_certified(g, mini)
        _assert_certified(g, heur)
