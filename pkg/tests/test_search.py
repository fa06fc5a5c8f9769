import itertools
import math

import pytest

from conftest import brute_clique_number, random_graph
from hedcap.graph import (
    complement,
    complete_graph,
    cycle_graph,
    make_graph,
    or_power,
    tensor_product,
)
from hedcap.paley import paley_family, paley_graph, self_complement_witness
from hedcap.search import (
    SearchBudget,
    SearchInconclusive,
    chromatic_number,
    greedy_coloring,
    homomorphism,
    is_k_colorable,
    max_clique,
    max_independent_set,
    odd_girth,
    selfcomp_square_clique,
    verify_coloring,
    verify_homomorphism,
)


def test_clique_examples():
    assert max_clique(make_graph(1, [])).size == 1
    assert max_clique(make_graph(0, [])).size == 0
    assert max_clique(paley_graph(17)).size == 3
    res = max_clique(or_power(cycle_graph(5), 2))
    assert res.size == 5 and res.proven_optimal
    assert res.witness == tuple(i * 5 + 2 * i % 5 for i in range(5))


def test_clique_matches_brute_force(rng):
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 10), rng.uniform(0.2, 0.9))
        res = max_clique(g)
        assert res.size == brute_clique_number(g)
        assert g.is_clique(res.witness)


def test_clique_witness_is_lex_least(rng):
    for _ in range(30):
        g = random_graph(rng, rng.randint(1, 9))
        res = max_clique(g)
        best = min(s for s in itertools.combinations(range(g.n), res.size) if g.is_clique(s))
        assert res.witness == best


def test_clique_vertex_cover_relation(rng):
    for _ in range(20):
        g = random_graph(rng, rng.randint(1, 10))
        h = complement(g)
        cover = min(
            k for k in range(g.n + 1)
            for s in [itertools.combinations(range(g.n), k)]
            if any(all(u in c or v in c for u, v in h.edges()) for c in s)
        )
        assert max_clique(g).size == g.n - cover


def test_budget_exhaustion_keeps_valid_clique():
    g = paley_graph(101)
    res = max_clique(g, SearchBudget(max_nodes=5))
    assert not res.proven_optimal and g.is_clique(res.witness) and res.size >= 1


def test_independent_set():
    assert max_independent_set(paley_graph(13)).size == 3
    assert max_independent_set(cycle_graph(5)).size == 2
    assert max_independent_set(paley_graph(17)).size == 3


def test_colouring():
    assert is_k_colorable(paley_graph(17), 5) is None
    assert is_k_colorable(paley_graph(13), 4) is None
    col = is_k_colorable(cycle_graph(5), 3)
    assert col is not None and verify_coloring(cycle_graph(5), col, 3)
    assert chromatic_number(cycle_graph(5)) == 3
    assert chromatic_number(paley_graph(13)) == 5
    assert chromatic_number(complete_graph(6)) == 6
    assert chromatic_number(make_graph(0, [])) == 0


def test_chromatic_matches_brute_force(rng):
    for _ in range(25):
        g = random_graph(rng, rng.randint(1, 7))
        brute = next(
            k for k in range(1, g.n + 1)
            if any(verify_coloring(g, list(c), k) for c in itertools.product(range(k), repeat=g.n))
        )
        assert chromatic_number(g) == brute


def test_greedy_colouring_is_proper(rng):
    for _ in range(20):
        g = random_graph(rng, rng.randint(1, 15))
        assert verify_coloring(g, greedy_coloring(g))


def test_colouring_budget():
    with pytest.raises(SearchInconclusive):
        is_k_colorable(paley_graph(101), 9, SearchBudget(max_nodes=10))


def test_homomorphisms():
    c9, c5 = cycle_graph(9), cycle_graph(5)
    h = homomorphism(c9, c5)
    assert h is not None and verify_homomorphism(c9, c5, h)
    assert homomorphism(c5, c9) is None
    assert homomorphism(paley_graph(13), complete_graph(4)) is None


def test_projection_homomorphism(rng):
    for _ in range(15):
        f, g = random_graph(rng, rng.randint(1, 5)), random_graph(rng, rng.randint(1, 5))
        t = tensor_product(f, g)
        proj = [i // g.n for i in range(t.n)]
        assert verify_homomorphism(t, f, proj)
        assert homomorphism(t, f) is not None


def test_homomorphism_composition(rng):
    found = 0
    for _ in range(200):
        f, g, h = (random_graph(rng, rng.randint(2, 6), 0.6) for _ in range(3))
        a, b = homomorphism(f, g), homomorphism(g, h)
        if a is not None and b is not None:
            found += 1
            assert verify_homomorphism(f, h, [b[a[v]] for v in range(f.n)])
    assert found > 5


def test_homomorphism_matches_brute_force(rng):
    for _ in range(30):
        f, g = random_graph(rng, rng.randint(1, 5)), random_graph(rng, rng.randint(1, 4))
        brute = any(verify_homomorphism(f, g, list(m)) for m in itertools.product(range(g.n), repeat=f.n))
        assert (homomorphism(f, g) is not None) == brute


def test_odd_girth():
    assert odd_girth(cycle_graph(5)) == 5
    assert odd_girth(complete_graph(2)) == math.inf
    assert odd_girth(cycle_graph(8)) == math.inf
    assert odd_girth(tensor_product(cycle_graph(5), cycle_graph(7))) == 7


def test_square_clique_construction():
    c5 = cycle_graph(5)
    assert len(selfcomp_square_clique(c5, [2 * x % 5 for x in range(5)])) == 5
    assert selfcomp_square_clique(make_graph(1, []), [0]) == [0]
    q16 = paley_family(17, "one-deleted")
    clique = selfcomp_square_clique(q16, list(self_complement_witness(17).one_deleted))
    assert len(clique) == 16
    assert or_power(q16, 2).is_clique(clique)
