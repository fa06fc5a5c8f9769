import math

import pytest

from hedcap.graph import complement, is_isomorphic, make_graph, path_graph
from hedcap.paley import (
    FieldError,
    PaleyVariant,
    build_field,
    edge_orbit,
    is_automorphism,
    is_complementing,
    is_prime,
    nonzero_squares,
    paley_family,
    paley_graph,
    prime_power,
    self_complement_witness,
    transitivity_generators,
    vertex_orbit,
    z_pair,
)
from hedcap.search import max_clique, max_independent_set


def test_primes_and_prime_powers():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert prime_power(9) == (3, 2)
    assert prime_power(125) == (5, 3)
    assert prime_power(12) is None


def test_build_field_prime():
    f = build_field(13)
    assert f.q == 13 and f.mul(5, 8) == 1 and f.add(12, 3) == 2


def test_build_field_extension_axioms():
    f = build_field(3, 2)
    q = f.q
    assert q == 9
    for a in range(q):
        assert f.add(a, f.neg(a)) == 0
        for b in range(q):
            assert f.mul(a, b) == f.mul(b, a)
            for c in range(q):
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert len({f.exp_table[i] for i in range(q - 1)}) == q - 1


def test_build_field_errors():
    with pytest.raises(FieldError):
        build_field(4, 1)
    with pytest.raises(FieldError):
        build_field(5, 0)


def test_squares():
    assert sorted(nonzero_squares(build_field(13))) == [1, 3, 4, 9, 10, 12]
    assert sorted(nonzero_squares(build_field(5))) == [1, 4]
    assert 16 in nonzero_squares(build_field(17))
    assert len(nonzero_squares(build_field(3, 2))) == 4


def test_squares_match_brute_force():
    for p in (5, 13, 29, 41):
        f = build_field(p)
        assert nonzero_squares(f) == {x * x % p for x in range(1, p)}


@pytest.mark.parametrize("q", [5, 9, 13, 17, 25, 29, 37, 41, 49, 53, 61, 73, 81, 89, 97, 101])
def test_paley_structure(q):
    g = paley_graph(q)
    assert g.n == q and set(g.degrees()) == {(q - 1) // 2}
    w = self_complement_witness(q)
    assert is_complementing(g, list(w.paley))
    gens = transitivity_generators(q)
    assert all(is_automorphism(g, p) for p in gens)


def test_paley_orders_rejected():
    for q in (7, 15, 3, 6):
        with pytest.raises(FieldError):
            paley_graph(q)


def test_paley_small_cases():
    assert is_isomorphic(paley_graph(5), make_graph(5, [(i, (i + 1) % 5) for i in range(5)])) is not None
    assert max_clique(paley_graph(9)).size == 3
    assert is_isomorphic(paley_family(5, "one-deleted"), path_graph(4)) is not None


def test_paley_family_variants():
    q16 = paley_family(17, PaleyVariant.ONE_DELETED)
    assert q16.n == 16 and set(q16.degrees()) == {7, 8} and q16.label == "Q16"
    za, zn = z_pair(17)
    assert za.n == zn.n == 15 and za.label == "Z15a" and zn.label == "Z15n"
    p = paley_graph(17)
    assert p.has_edge(0, 1) and not p.has_edge(0, 3)
    assert za.rows == paley_family(17, "two-deleted-adjacent").rows


def test_z_pair_complementary():
    for q in (13, 17, 29):
        za, zn = z_pair(q)
        assert is_isomorphic(za, complement(zn)) is not None


def test_complementing_witness_multipliers():
    assert self_complement_witness(5).multiplier == 2
    assert self_complement_witness(13).multiplier == 2
    assert self_complement_witness(17).multiplier == 3
    w = self_complement_witness(5)
    g = paley_graph(5)
    assert g.has_edge(0, 1) and not g.has_edge(w.paley[0], w.paley[1])


def test_orbits():
    gens = transitivity_generators(13)
    assert vertex_orbit(gens, 0) == set(range(13))
    assert len(edge_orbit(gens, (0, 1))) == 39
    gens = transitivity_generators(17)
    assert len(vertex_orbit(gens, 0)) == 17 and len(edge_orbit(gens, (0, 1))) == 68


def test_ramsey_paley17():
    g = paley_graph(17)
    assert max_clique(g).size == 3 and max_independent_set(g).size == 3
    assert math.isclose(len(g.edges()), 68)
