import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hedcap.formats import (
    DimacsError,
    Graph6ByteError,
    Graph6Error,
    Graph6HeaderError,
    Graph6LengthError,
    decode_graph6,
    encode_graph6,
    parse_dimacs,
    write_dimacs,
)
from hedcap.graph import complete_graph, cycle_graph, empty_graph, make_graph
from hedcap.paley import paley_graph


def test_known_encodings():
    assert encode_graph6(make_graph(1, [])) == b"@"
    assert encode_graph6(complete_graph(3)) == b"Bw"
    assert decode_graph6("@").n == 1
    assert decode_graph6(b"Bw").is_complete()
    assert encode_graph6(empty_graph(0)) == b"?"


def test_header_is_optional():
    assert decode_graph6(">>graph6<<Bw").is_complete()


def test_extended_size_header():
    g = cycle_graph(100)
    data = encode_graph6(g)
    assert data[0] == 126 and len(data) == 4 + -(-100 * 99 // 2 // 6)
    assert decode_graph6(data).rows == g.rows


@st.composite
def graphs(draw):
    n = draw(st.integers(0, 40))
    pairs = list(itertools.combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return make_graph(n, [e for e, b in zip(pairs, bits) if b])


@given(graphs())
def test_graph6_round_trip(g):
    data = encode_graph6(g)
    assert all(63 <= b <= 126 for b in data)
    assert decode_graph6(data).rows == g.rows


def test_malformed_graph6_errors_are_distinct():
    with pytest.raises(Graph6LengthError):
        decode_graph6("Dq")  # truncated: 5 vertices need 2 body bytes
    with pytest.raises(Graph6LengthError):
        decode_graph6("Bww")
    with pytest.raises(Graph6ByteError):
        decode_graph6("B\x01")
    with pytest.raises(Graph6HeaderError):
        decode_graph6("~?")
    with pytest.raises(Graph6HeaderError):
        decode_graph6("")
    with pytest.raises(Graph6LengthError):
        decode_graph6("Bx")  # nonzero padding bit


def test_encode_rejects_huge():
    from hedcap.formats import _size_bytes

    with pytest.raises(Graph6Error):
        _size_bytes(258048)


def test_dimacs_parse():
    g = parse_dimacs("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    assert g.is_complete() and g.n == 3


@pytest.mark.parametrize(
    "text",
    ["e 1 2\n", "p edge 3 1\ne 2 2\n", "p edge 3 1\ne 1 4\n", "c only\n", "p edge 3 1\nx 1 2\n"],
)
def test_dimacs_errors(text):
    with pytest.raises(DimacsError):
        parse_dimacs(text)


def test_dimacs_round_trip():
    p13 = paley_graph(13)
    text = write_dimacs(p13)
    g = parse_dimacs(text)
    assert g.rows == p13.rows and g.label == "P13"
    edge_lines = [ln for ln in text.splitlines() if ln.startswith("e ")]
    assert edge_lines == sorted(edge_lines, key=lambda s: tuple(map(int, s.split()[1:])))
