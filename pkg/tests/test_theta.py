import math

import numpy as np
import pytest

from conftest import random_graph
from hedcap.graph import complement, complete_graph, cycle_graph, empty_graph, join, make_graph, or_product
from hedcap.paley import paley_family, paley_graph
from hedcap.search import chromatic_number, max_independent_set
from hedcap.theta import (
    CertifiedValue,
    SolverConfig,
    as_symmetric,
    lovasz_theta,
    max_eigenvalue,
    theta_bar,
    verify_certificate,
)


def test_max_eigenvalue_examples():
    assert math.isclose(max_eigenvalue(np.eye(5)).value, 1.0)
    assert math.isclose(max_eigenvalue(np.ones((4, 4))).value, 4.0)
    c5 = cycle_graph(5).adjacency_matrix()
    ev = max_eigenvalue(c5)
    assert math.isclose(ev.value, 2.0, abs_tol=1e-12)
    assert 2.0 <= ev.upper <= 2.0 + 1e-9


def test_max_eigenvalue_upper_is_safe():
    rng = np.random.default_rng(0)
    for _ in range(20):
        a = rng.normal(size=(12, 12))
        m = a + a.T
        ev = max_eigenvalue(m)
        assert ev.upper >= np.linalg.eigvalsh(m)[-1]
        assert ev.upper >= ev.rayleigh


def test_as_symmetric_rejects():
    with pytest.raises(ValueError):
        as_symmetric([[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        as_symmetric([[np.nan]])
    with pytest.raises(ValueError):
        as_symmetric([1, 2])


def test_trivial_values():
    for n in (1, 3, 6):
        assert lovasz_theta(empty_graph(n)).lower == n
        v = lovasz_theta(complete_graph(n))
        assert v.contains(1.0, 1e-6)
        assert theta_bar(complete_graph(n)).contains(n, 1e-6)


def test_c5_is_sqrt5():
    v = lovasz_theta(cycle_graph(5))
    assert v.contains(math.sqrt(5), 1e-7) and v.gap < 1e-4
    assert verify_certificate(cycle_graph(5), v)


def test_odd_cycle_formula():
    for n in (7, 9, 11):
        expect = n * math.cos(math.pi / n) / (1 + math.cos(math.pi / n))
        assert lovasz_theta(cycle_graph(n)).contains(expect, 1e-6)


@pytest.mark.parametrize("q", [5, 9, 13, 17])
def test_paley_theta_is_sqrt(q):
    v = theta_bar(paley_graph(q))
    assert v.contains(math.sqrt(q), 1e-6)


def test_small_golden_values():
    assert abs(theta_bar(paley_family(13, "one-deleted")).value - 3.4927) < 5e-3
    assert abs(theta_bar(paley_family(17, "one-deleted")).value - 4.0035) < 5e-3


def test_sandwich_and_certificates(rng):
    for _ in range(15):
        g = random_graph(rng, rng.randint(2, 10))
        v = lovasz_theta(g)
        assert v.lower <= v.upper
        assert verify_certificate(g, v)
        assert max_independent_set(g).size <= v.upper + 1e-7
        # clique cover number (colouring the complement) bounds theta from above
        assert v.lower <= chromatic_number(complement(g)) + 1e-7


def test_theta_axioms_on_random_pairs(rng):
    for _ in range(6):
        f, g = random_graph(rng, rng.randint(1, 6)), random_graph(rng, rng.randint(1, 6))
        tf, tg = theta_bar(f).value, theta_bar(g).value
        assert math.isclose(theta_bar(join(f, g)).value, tf + tg, rel_tol=1e-3)
        assert math.isclose(theta_bar(or_product(f, g)).value, tf * tg, rel_tol=1e-3)


def test_verify_rejects_tampered_certificates():
    g = cycle_graph(5)
    v = lovasz_theta(g)
    bad_upper = CertifiedValue(v.lower, v.upper - 0.1, 0, "x", v.primal, v.dual)
    assert not verify_certificate(g, bad_upper)
    x = v.primal.copy()
    x[0, 1] = x[1, 0] = 0.05
    assert not verify_certificate(g, CertifiedValue(v.lower, v.upper, 0, "x", x, v.dual))
    assert not verify_certificate(g, CertifiedValue(v.lower, v.upper, 0, "x", None, v.dual))
    assert not verify_certificate(make_graph(4, []), v)


def test_solver_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(target_gap=0)
    loose = lovasz_theta(cycle_graph(7), SolverConfig(target_gap=1e-2))
    assert loose.gap <= 1e-2


def test_empty_vertex_set_rejected():
    with pytest.raises(ValueError):
        lovasz_theta(make_graph(0, []))
