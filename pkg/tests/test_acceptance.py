"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

import time
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, given, settings

from conftest import complete, connected_graphs, cycle, wheel_routing
from fwdix.bounds import enumerative_min_index, min_index_closed_forms, product_optimal, relation_check
from fwdix.families import (CONFIRMED, REFUTED, FamilySpec, closed_form, complete_bipartite,
                            directed_cycle, generate, hypercube, path, star, verify_family, wheel)
from fwdix.graph import cartesian_product, enumerate_connected_graphs
from fwdix.routing import load_profile, validate_routing
from fwdix.solver import (EDGE, GENERAL, MINIMAL, VERTEX, exact_index, heuristic_index, lower_bound_A,
                          lower_bound_B, transitive_formula)

RESULTS = {}


@contextmanager
def criterion(number, title):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        line = f"criterion {number} FAIL  {title}: {exc!r}"[:300]
        RESULTS[number] = line
        print(line)
        raise
    line = f"criterion {number} PASS  {title} ({time.perf_counter() - t0:.1f}s)"
    RESULTS[number] = line
    print(line)


def solve(g, objective, mode=GENERAL):
    res = exact_index(g, objective, mode)
    assert res.optimal, (g.name, objective, mode, res.status)
    return res


def solve_all(g):
    return {"xi": solve(g, VERTEX), "xi_m": solve(g, VERTEX, MINIMAL),
            "pi": solve(g, EDGE), "pi_m": solve(g, EDGE, MINIMAL)}


def corpus():
    graphs = []
    for n in range(2, 6):
        for d in range(1, n):
            graphs += list(enumerate_connected_graphs(n, d))
    graphs += [cycle(5), cycle(6), cycle(7), path(6), path(7), wheel(6), wheel(7), star(7), complete(6),
               complete_bipartite(3, 3), complete_bipartite(4, 2), hypercube(3),
               cartesian_product(cycle(3), cycle(3))]
    return graphs


@pytest.fixture(scope="module")
def solved_corpus():
    return [(g, solve_all(g)) for g in corpus()]


def test_criterion_1_closed_form_confirmations():
    with criterion(1, "closed-form confirmations with the exact solver"):
        cases = [(star(5), 12, 8), (path(4), 4, 8), (hypercube(3), 5, 8), (cycle(4), 1, None)]
        for g, xi, pi in cases:
            t0 = time.perf_counter()
            assert solve(g, VERTEX).value == xi, g.name
            if pi is not None:
                assert solve(g, EDGE).value == pi, g.name
            assert time.perf_counter() - t0 < 60
        for d in range(3, 9):
            t0 = time.perf_counter()
            assert solve(cycle(d), EDGE).value == d * d // 4, d
            assert time.perf_counter() - t0 < 60
        for d in range(3, 7):
            assert solve(directed_cycle(d), VERTEX).value == (d - 1) * (d - 2) // 2, d


def test_criterion_2_cycle_discrepancy():
    with criterion(2, "cycle vertex formula refuted, torus specialization confirmed"):
        for d, exact in [(3, 0), (4, 1), (5, 2)]:
            rows = {(r.objective, r.mode, r.citation): r for r in verify_family(FamilySpec("cycle", (d,))).rows}
            printed = rows[("vertex", "general", "§6-item5")]
            assert printed.claimed == str((d - 1) ** 2 // 4)
            assert printed.computed == str(exact) and printed.verdict == REFUTED
            special = rows[("vertex", "general", "§6-item6")]
            assert special.claimed == special.computed == str(exact) and special.verdict == CONFIRMED


def test_criterion_3_wheel_reproduction(w7):
    with criterion(3, "W7 loads and exact indices"):
        prof = load_profile(w7, wheel_routing())
        assert prof.vertex_load[6] == 6 and set(prof.vertex_load[:6]) == {2}
        assert load_profile(w7, wheel_routing(modified=True)).xi == 4
        t0 = time.perf_counter()
        res = solve(w7, VERTEX)
        assert time.perf_counter() - t0 < 300
        assert res.value == 3
        assert validate_routing(w7, res.certificate).valid
        assert load_profile(w7, res.certificate).xi == 3
        assert solve(w7, VERTEX, MINIMAL).value == 6


def test_criterion_4_transitive_formula():
    with criterion(4, "minimal vertex index equals row sum minus (n-1)"):
        graphs = [cycle(5), cycle(6), complete(5), complete_bipartite(3, 3), hypercube(3),
                  cartesian_product(cycle(3), cycle(3))]
        for g in graphs:
            assert solve(g, VERTEX, MINIMAL).value == transitive_formula(g), g.name


def test_criterion_5_product_formulas():
    with criterion(5, "product formula against exact solves"):
        k3, k2 = (3, 0, 2), (2, 0, 2)
        assert product_optimal([k3, k3]) == (4, 6)
        c3c3 = cartesian_product(cycle(3), cycle(3))
        assert (solve(c3c3, VERTEX).value, solve(c3c3, EDGE).value) == (4, 6)
        assert product_optimal([k2, k2, k2]) == (5, 8)
        q3 = hypercube(3)
        assert (solve(q3, VERTEX).value, solve(q3, EDGE).value) == (5, 8)


def test_criterion_6_relations(solved_corpus):
    with criterion(6, "xi/pi relations on the solved corpus"):
        assert len(solved_corpus) >= 10
        tight = {}
        named = {"Q3", "C5"}
        for g, v in solved_corpus:
            rep = relation_check(v["xi"].value, v["pi"].value, v["xi_m"].value, v["pi_m"].value,
                                 n=g.n, max_degree=g.max_degree, min_degree=g.min_degree)
            assert all(e.holds for e in rep.applicable()), (sorted(g.edges()), rep.to_json())
            if g.name in named:
                tight[g.name] = rep["T2.6a"].value
        assert tight == {"Q3": 0, "C5": 0}


def test_criterion_7_enumerative_minima():
    with criterion(7, "enumerative minima for n <= 5"):
        t0 = time.perf_counter()
        assert enumerative_min_index(4, 2, VERTEX).value == 1
        assert enumerative_min_index(5, 2, VERTEX).value == 2
        for n in range(3, 6):
            for delta in range(2, n):
                claims = min_index_closed_forms(n, "min", delta)
                xi = enumerative_min_index(n, delta, VERTEX, "min")
                pi = enumerative_min_index(n, delta, EDGE, "min")
                assert xi.optimal and pi.optimal
                assert (xi.value, pi.value) == (claims.xi.exact, claims.pi.exact), (n, delta)
        for n in range(3, 6):
            for D in range(2, n):
                xi = enumerative_min_index(n, D, VERTEX).value
                assert xi >= n - 1 - D, (n, D)
                if D >= 3:
                    pi = enumerative_min_index(n, D, EDGE).value
                    assert pi >= -(-4 * (n - 1) // D) - 2, (n, D)
        assert time.perf_counter() - t0 < 600


def check_bracketing(g):
    res = solve_all(g)
    xi, xim, pi, pim = (res[k].value for k in ("xi", "xi_m", "pi", "pi_m"))
    assert lower_bound_A(g)[1] <= xi <= xim
    assert lower_bound_B(g)[1] <= pi <= pim
    assert heuristic_index(g, VERTEX).value >= xi
    assert heuristic_index(g, EDGE).value >= pi
    for key, r in res.items():
        prof = load_profile(g, r.certificate)
        assert (prof.xi if key.startswith("xi") else prof.pi) == r.value, (sorted(g.edges()), key)


@settings(max_examples=50, deadline=None, derandomize=True,
          suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
@given(connected_graphs(2, 7))
def _random_bracketing(g):
    check_bracketing(g)


def test_criterion_8_bracketing():
    with criterion(8, "bound bracketing on the corpus and 50 random graphs"):
        for g in corpus():
            check_bracketing(g)
        _random_bracketing()


def test_criterion_9_cube_variant_arithmetic():
    with criterion(9, "folded and augmented cube closed forms"):
        for family in ("folded-cube", "augmented-cube"):
            for n in (2, 3):
                s = FamilySpec(family, (n,))
                g = generate(s)
                claims = {c.index: c.lower for c in closed_form(s) if c.exact and not c.disputed}
                assert (claims["xi"], claims["pi"]) == (transitive_formula(g), lower_bound_B(g)[1]), s.label
                if n == 2:
                    assert (claims["xi"], claims["pi"]) == (0, 2)
        k4 = complete(4)
        assert (transitive_formula(k4), lower_bound_B(k4)[1]) == (0, 2)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
