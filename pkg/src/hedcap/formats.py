"""graph6 and DIMACS edge-format readers and writers."""

from __future__ import annotations

from .graph import Graph, GraphError, _from_rows, make_graph

__all__ = [
    "FormatError",
    "Graph6Error",
    "Graph6HeaderError",
    "Graph6ByteError",
    "Graph6LengthError",
    "DimacsError",
    "encode_graph6",
    "decode_graph6",
    "parse_dimacs",
    "write_dimacs",
]

GRAPH6_MAX = 258047
_HEADER = b">>graph6<<"


class FormatError(ValueError):
    pass


class Graph6Error(FormatError):
    pass


class Graph6HeaderError(Graph6Error):
    """The size prefix is missing or malformed."""


class Graph6ByteError(Graph6Error):
    """A byte outside the printable range 63..126."""


class Graph6LengthError(Graph6Error):
    """The body is truncated or followed by trailing garbage."""


class DimacsError(FormatError):
    pass


def _size_bytes(n: int) -> bytes:
    if n < 0 or n > GRAPH6_MAX:
        raise Graph6Error(f"graph6 supports 0..{GRAPH6_MAX} vertices, got {n}")
    if n <= 62:
        return bytes([n + 63])
    return bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])


def encode_graph6(g: Graph) -> bytes:
    out = bytearray(_size_bytes(g.n))
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        row = g.rows[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def decode_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    data = data.strip()
    if data.startswith(_HEADER):
        data = data[len(_HEADER) :]
    if not data:
        raise Graph6HeaderError("empty graph6 string")
    for pos, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6ByteError(f"byte {b!r} at offset {pos} is outside 63..126")
    if data[0] != 126:
        n, body = data[0] - 63, data[1:]
    else:
        if len(data) < 4 or data[1] == 126:
            raise Graph6HeaderError("extended size header is incomplete or unsupported")
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        if n <= 62:
            raise Graph6HeaderError(f"extended header used for small n={n}")
        body = data[4:]
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    if len(body) < need:
        raise Graph6LengthError(f"body truncated: {len(body)} of {need} bytes")
    if len(body) > need:
        raise Graph6LengthError(f"{len(body) - need} trailing bytes after graph body")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if nbits % 6 and (body[-1] - 63) & ((1 << (6 - nbits % 6)) - 1):
        raise Graph6LengthError("nonzero padding bits")
    return _from_rows(rows)


def parse_dimacs(text: str) -> Graph:
    n = None
    label = ""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        tag = line.split(maxsplit=1)[0]
        if tag == "c":
            rest = line[1:].strip()
            if rest.startswith("label ") and not label:
                label = rest[len("label ") :].strip()
            continue
        parts = line.split()
        if tag == "p":
            if n is not None:
                raise DimacsError(f"line {lineno}: second problem line")
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise DimacsError(f"line {lineno}: expected 'p edge N M'")
            n = int(parts[2])
        elif tag == "e":
            if n is None:
                raise DimacsError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise DimacsError(f"line {lineno}: expected 'e u v'")
            u, v = int(parts[1]), int(parts[2])
            if not (1 <= u <= n and 1 <= v <= n):
                raise DimacsError(f"line {lineno}: endpoint out of range 1..{n}")
            if u == v:
                raise DimacsError(f"line {lineno}: loop at vertex {u}")
            edges.append((u - 1, v - 1))
        else:
            raise DimacsError(f"line {lineno}: unknown line type {tag!r}")
    if n is None:
        raise DimacsError("missing 'p edge N M' problem line")
    try:
        return make_graph(n, edges, label)
    except GraphError as exc:  # pragma: no cover - checked above
        raise DimacsError(str(exc)) from exc


def write_dimacs(g: Graph) -> str:
    lines = []
    if g.label:
        lines.append(f"c label {g.label}")
    edges = g.edges()
    lines.append(f"p edge {g.n} {len(edges)}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in edges)
    return "\n".join(lines) + "\n"
