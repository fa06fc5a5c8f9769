"""Immutable simple graphs stored as integer bit rows, plus graph operations.

Vertex ``v`` of a graph on ``n`` vertices has its neighbourhood encoded as
the integer ``rows[v]``, bit ``u`` set iff ``{u, v}`` is an edge.  In every
product of ``F`` and ``G`` the pair ``(x, u)`` lives at index
``x * G.n + u``; powers use the same row-major mixed-radix convention.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Graph",
    "GraphError",
    "SizeBudgetExceeded",
    "DEFAULT_SIZE_BUDGET",
    "make_graph",
    "empty_graph",
    "complete_graph",
    "cycle_graph",
    "path_graph",
    "complement",
    "tensor_product",
    "or_product",
    "and_product",
    "join",
    "or_power",
    "induced_subgraph",
    "delete_vertices",
    "is_isomorphic",
    "pair_index",
    "split_index",
]

DEFAULT_SIZE_BUDGET = 20_000


class GraphError(ValueError):
    """Malformed graph input (bad endpoint, loop, bad vertex set)."""


class SizeBudgetExceeded(GraphError):
    """A construction would exceed the configured vertex budget."""


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.rows) != self.n:
            raise GraphError("row count does not match vertex count")
        limit = 1 << self.n
        for v, row in enumerate(self.rows):
            if row < 0 or row >= limit:
                raise GraphError(f"row {v} references a vertex >= n")
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            for u in _bits(row):
                if not self.rows[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    @property
    def all_vertices(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, sorted."""
        out = []
        for u, row in enumerate(self.rows):
            for v in _bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        if len(set(vs)) != len(vs):
            return False
        return all(self.has_edge(a, b) for a, b in itertools.combinations(vs, 2))

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        if len(set(vs)) != len(vs):
            return False
        return not any(self.has_edge(a, b) for a, b in itertools.combinations(vs, 2))

    def is_complete(self) -> bool:
        return self.num_edges == self.n * (self.n - 1) // 2

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int8)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def with_label(self, label: str) -> Graph:
        return _from_rows(self.rows, label)

    def __repr__(self) -> str:
        name = f" {self.label!r}" if self.label else ""
        return f"<Graph{name} n={self.n} m={self.num_edges}>"


def _from_rows(rows: Sequence[int], label: str = "") -> Graph:
    # rows built internally are symmetric by construction; skip the O(m) check
    g = object.__new__(Graph)
    object.__setattr__(g, "n", len(rows))
    object.__setattr__(g, "rows", tuple(rows))
    object.__setattr__(g, "label", label)
    return g


def make_graph(n: int, edges: Iterable[Sequence[int]], label: str = "") -> Graph:
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    rows = [0] * n
    for e in edges:
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"endpoint out of range in edge ({u}, {v}) for n={n}")
        if u == v:
            raise GraphError(f"loop ({u}, {v}) not allowed")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return _from_rows(rows, label)


def empty_graph(n: int) -> Graph:
    return _from_rows([0] * n, f"E{n}")


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return _from_rows([full ^ (1 << v) for v in range(n)], f"K{n}")


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycles need at least 3 vertices")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)], f"C{n}")


def path_graph(n: int) -> Graph:
    return make_graph(n, [(i, i + 1) for i in range(n - 1)], f"path{n}")


def complement(g: Graph) -> Graph:
    full = g.all_vertices
    rows = [full & ~row & ~(1 << v) for v, row in enumerate(g.rows)]
    label = g.label[1:] if g.label.startswith("~") else "~" + g.label if g.label else ""
    return _from_rows(rows, label)


def pair_index(x: int, u: int, n_second: int) -> int:
    return x * n_second + u


def split_index(i: int, n_second: int) -> tuple[int, int]:
    return divmod(i, n_second)


def _check_budget(size: int, budget: int) -> None:
    if size > budget:
        raise SizeBudgetExceeded(f"construction needs {size} vertices, budget is {budget}")


def _spread(mask: int, block: int) -> int:
    """Integer with bit ``y * block`` set for each bit ``y`` of ``mask``."""
    out = 0
    for y in _bits(mask):
        out |= 1 << (y * block)
    return out


def _product_rows(f: Graph, g: Graph, kind: str) -> list[int]:
    m = g.n
    full_g = g.all_vertices
    every = _spread(f.all_vertices, m)
    rows = []
    for x in range(f.n):
        # pattern * spread places a copy of the pattern in each selected block;
        # patterns fit in m bits so there are no carries
        nf = _spread(f.rows[x], m)
        nf_closed = nf | (1 << (x * m))
        for u in range(m):
            gu = g.rows[u]
            if kind == "tensor":
                row = gu * nf
            elif kind == "or":
                row = full_g * nf | gu * every
            else:  # strong / AND
                row = (gu | 1 << u) * nf_closed
            row &= ~(1 << (x * m + u))
            rows.append(row)
    return rows


def _product(f: Graph, g: Graph, kind: str, symbol: str, budget: int) -> Graph:
    _check_budget(f.n * g.n, budget)
    return _from_rows(_product_rows(f, g, kind), f"({f.label}{symbol}{g.label})")


def tensor_product(f: Graph, g: Graph, budget: int = DEFAULT_SIZE_BUDGET) -> Graph:
    """Categorical product: adjacent iff adjacent in both coordinates."""
    return _product(f, g, "tensor", "x", budget)


def or_product(f: Graph, g: Graph, budget: int = DEFAULT_SIZE_BUDGET) -> Graph:
    """OR (co-normal) product: adjacent iff adjacent in at least one coordinate."""
    return _product(f, g, "or", ".", budget)


def and_product(f: Graph, g: Graph, budget: int = DEFAULT_SIZE_BUDGET) -> Graph:
    """AND (strong) product: adjacent-or-equal in both coordinates, distinct pairs."""
    return _product(f, g, "and", "*", budget)


def join(f: Graph, g: Graph, budget: int = DEFAULT_SIZE_BUDGET) -> Graph:
    _check_budget(f.n + g.n, budget)
    shift = f.n
    g_block = g.all_vertices << shift
    rows = [row | g_block for row in f.rows]
    rows += [(row << shift) | f.all_vertices for row in g.rows]
    return _from_rows(rows, f"({f.label}+{g.label})")


def or_power(g: Graph, t: int, budget: int = DEFAULT_SIZE_BUDGET) -> Graph:
    if t < 1:
        raise GraphError("power must be at least 1")
    _check_budget(g.n**t, budget)
    out = g
    for _ in range(t - 1):
        out = or_product(out, g, budget)
    return out.with_label(f"{g.label}^{t}" if g.label else "")


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    pos = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        row = 0
        for u in _bits(g.rows[v]):
            if u in pos:
                row |= 1 << pos[u]
        rows.append(row)
    return _from_rows(rows)


def delete_vertices(g: Graph, vertices: Iterable[int]) -> Graph:
    drop = set(vertices)
    for v in drop:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    return induced_subgraph(g, (v for v in range(g.n) if v not in drop))


def _refine(g: Graph) -> list[int]:
    """Stable colouring by iterated degree refinement (1-dim Weisfeiler-Leman)."""
    colors = g.degrees()
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in _bits(g.rows[v]))))
            for v in range(g.n)
        ]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if len(palette) == len(set(colors)):
            return new
        colors = new


def _joint_refine(f: Graph, g: Graph) -> tuple[list[int], list[int]]:
    # refine on the disjoint union so colour names are comparable across graphs
    union = _from_rows(list(f.rows) + [row << f.n for row in g.rows])
    colors = _refine(union)
    return colors[: f.n], colors[f.n :]


def is_isomorphic(f: Graph, g: Graph, max_vertices: int = 64) -> list[int] | None:
    """Lexicographically least isomorphism ``F -> G`` as a list, or ``None``.

    Refinement colours only prune, so the first mapping found by ascending
    backtracking is the least one.
    """
    if max(f.n, g.n) > max_vertices:
        raise SizeBudgetExceeded(f"isomorphism test limited to {max_vertices} vertices")
    if f.n != g.n or f.num_edges != g.num_edges:
        return None
    if sorted(f.degrees()) != sorted(g.degrees()):
        return None
    cf, cg = _joint_refine(f, g)
    if sorted(cf) != sorted(cg):
        return None
    n = f.n
    mapping = [-1] * n
    used = 0

    def extend(v: int) -> bool:
        nonlocal used
        if v == n:
            return True
        # images of already-mapped neighbours / non-neighbours of v
        need_adj = 0
        need_non = 0
        for u in range(v):
            if f.rows[v] >> u & 1:
                need_adj |= 1 << mapping[u]
            else:
                need_non |= 1 << mapping[u]
        for w in range(n):
            if used >> w & 1 or cg[w] != cf[v]:
                continue
            row = g.rows[w]
            if row & need_adj != need_adj or row & need_non:
                continue
            mapping[v] = w
            used |= 1 << w
            if extend(v + 1):
                return True
            used &= ~(1 << w)
        mapping[v] = -1
        return False

    return list(mapping) if extend(0) else None
