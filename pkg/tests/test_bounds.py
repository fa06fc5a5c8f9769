import math

import pytest

from conftest import random_graph

from hedcap.bounds import (
    CLIQUE_POWER,
    SELF_COMPLEMENTARY_SQUARE,
    THETA_BAR,
    VT_SELFCOMP_THEOREM,
    GraphHints,
    LabConfig,
    capacity_bounds,
    hanson_petridis,
    pair_bounds,
    paley_gap_certificate,
    paley_hints,
)
from hedcap.graph import complete_graph, cycle_graph, make_graph
from hedcap.paley import paley_family, paley_graph
from hedcap.search import SearchBudget, max_clique


def test_c5_pinned_by_square_clique():
    r = capacity_bounds(cycle_graph(5), 2)
    assert math.isclose(r.best_lower, math.sqrt(5), rel_tol=1e-12)
    assert abs(r.best_upper - math.sqrt(5)) < 1e-5
    assert r.pinned()
    assert any(e.provenance == CLIQUE_POWER and "G^2" in e.detail for e in r.lowers)


def test_paley17_exact_via_theorem():
    r = capacity_bounds(paley_graph(17), 1, hints=paley_hints(17))
    assert r.exact
    assert r.best_lower >= math.sqrt(17) - 1e-12
    assert abs(r.best_upper - math.sqrt(17)) < 1e-3
    assert {e.provenance for e in r.entries} >= {VT_SELFCOMP_THEOREM, THETA_BAR}


def test_q16_square_clique_lower_bound():
    r = capacity_bounds(paley_family(17, "one-deleted"), 1, hints=paley_hints(17, "one-deleted"))
    assert r.best_lower == pytest.approx(4.0)
    assert abs(r.best_upper - 4.0035) < 5e-3
    assert any(e.provenance == SELF_COMPLEMENTARY_SQUARE for e in r.lowers)
    r.check()


def test_bad_hints_are_ignored():
    g = paley_family(17, "one-deleted")
    bogus = GraphHints(complementing=tuple(range(16)), automorphisms=((1, 0) + tuple(range(2, 16)),))
    r = capacity_bounds(g, 1, hints=bogus)
    assert not r.exact
    r.check()


def test_lower_never_exceeds_upper_on_small_graphs(rng):
    for _ in range(15):
        g = random_graph(rng, rng.randint(1, 8))
        r = capacity_bounds(g, 2)
        assert r.best_lower <= r.best_upper + 1e-6


def test_complete_graph_exact():
    r = capacity_bounds(complete_graph(4), 1)
    assert r.best_lower == 4 and r.best_upper == pytest.approx(4, abs=1e-6)


@pytest.mark.parametrize("p,bound,cap", [(13, 3.0, 3), (17, 3.3723, 3), (101, 7.5887, 7)])
def test_hanson_petridis(p, bound, cap):
    hp = hanson_petridis(p)
    assert hp.omega_bound == pytest.approx(bound, abs=1e-4)
    assert hp.omega_cap == cap
    with pytest.raises(ValueError):
        hanson_petridis(19)


def test_pair_odd_cycles():
    r = pair_bounds(cycle_graph(9), cycle_graph(5))
    assert r.verdict == "equality-proved"
    assert r.homomorphisms["F->G"]["mapping"] is not None
    lo, hi = r.value_interval
    assert lo <= hi
    r = pair_bounds(cycle_graph(3), cycle_graph(5), max_power=2)
    assert r.verdict == "equality-proved"
    assert r.value_interval[0] == pytest.approx(math.sqrt(5))
    assert r.value_interval[1] == pytest.approx(math.sqrt(5), abs=1e-5)


def test_pair_q16_k4():
    q16 = paley_family(17, "one-deleted")
    r = pair_bounds(q16, complete_graph(4), f_hints=paley_hints(17, "one-deleted"))
    assert r.upper == pytest.approx(4.0)
    assert any(e.value == 3 and e.provenance == "common-clique" for e in r.lower_candidates)
    assert r.verdict == "gap-open"
    r.check()


def test_pair_upper_is_min_of_factors():
    f, g = cycle_graph(7), make_graph(2, [(0, 1)])
    r = pair_bounds(f, g)
    assert r.upper == pytest.approx(min(r.f_report.best_upper, r.g_report.best_upper))


def test_gap_certificate_p17():
    r = paley_gap_certificate(17)
    assert r.verdict == "gap-open"
    assert r.upper == pytest.approx(4.0)
    assert r.cap < 4
    assert 3.8849 - 5e-3 < r.cap < 3.8849 + 5e-3
    assert all(h.holds for h in r.hypotheses)


def test_gap_certificate_p13_names_failing_hypothesis():
    r = paley_gap_certificate(13)
    failing = [h for h in r.hypotheses if h.holds is False]
    assert failing and "Q12 does not map to K4" in failing[0].name
    assert any("Hypothesis fails" in line for line in r.narrative)
    assert r.verdict != "gap-open"


def test_gap_certificate_full_variant():
    r = paley_gap_certificate(17, "full")
    assert r.f_id == "P17" and r.g_id == "K5"
    assert r.verdict == "gap-open"


def test_gap_certificate_rejects_bad_input():
    with pytest.raises(ValueError):
        paley_gap_certificate(19)
    with pytest.raises(ValueError):
        paley_gap_certificate(17, "two-deleted-adjacent")


def test_search_budget_reaches_reports():
    cfg = LabConfig(search_budget=SearchBudget(max_nodes=2))
    r = capacity_bounds(paley_graph(41), 1, cfg)
    r.check()
    assert r.best_lower >= max_clique(paley_graph(41), cfg.search_budget).size
