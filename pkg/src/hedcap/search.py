"""Exact combinatorial search: cliques, colourings, homomorphisms, odd girth.

All solvers work on the integer bit rows of :class:`~hedcap.graph.Graph`.
Search effort is bounded by a :class:`SearchBudget`; running out never
produces a wrong answer, only an inconclusive one.
"""

from __future__ import annotations

import math
import time
from collections import deque
from dataclasses import dataclass

from .graph import Graph, GraphError, _bits, complement, or_power

__all__ = [
    "SearchBudget",
    "SearchInconclusive",
    "CliqueResult",
    "max_clique",
    "max_independent_set",
    "is_k_colorable",
    "chromatic_number",
    "greedy_coloring",
    "homomorphism",
    "odd_girth",
    "selfcomp_square_clique",
    "verify_coloring",
    "verify_homomorphism",
]


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int | None = None
    max_seconds: float | None = None


UNLIMITED = SearchBudget()


class SearchInconclusive(RuntimeError):
    """Budget ran out before the search could decide.

    ``lower``/``upper`` carry whatever bracket was established, when the
    question is numeric.
    """

    def __init__(self, message: str, lower: int | None = None, upper: int | None = None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class _Exhausted(Exception):
    pass


class _Meter:
    __slots__ = ("nodes", "max_nodes", "deadline")

    def __init__(self, budget: SearchBudget):
        self.nodes = 0
        self.max_nodes = budget.max_nodes
        self.deadline = None if budget.max_seconds is None else time.monotonic() + budget.max_seconds

    def tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise _Exhausted
        if self.deadline is not None and self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise _Exhausted


@dataclass(frozen=True)
class CliqueResult:
    size: int
    witness: tuple[int, ...]
    nodes_explored: int
    proven_optimal: bool


def _degeneracy_order(g: Graph) -> list[int]:
    """Vertices with the densest core first (reverse of min-degree peeling)."""
    alive = g.all_vertices
    removed = []
    deg = g.degrees()
    for _ in range(g.n):
        v = min(_bits(alive), key=lambda u: (deg[u], u))
        removed.append(v)
        alive &= ~(1 << v)
        for u in _bits(g.rows[v] & alive):
            deg[u] -= 1
    return removed[::-1]


class _CliqueSearcher:
    """Branch and bound with a greedy-colouring bound on bitset candidate sets."""

    def __init__(self, g: Graph, meter: _Meter):
        self.meter = meter
        self.order = _degeneracy_order(g)
        pos = {v: i for i, v in enumerate(self.order)}
        self.nbr = []
        for v in self.order:
            row = 0
            for u in _bits(g.rows[v]):
                row |= 1 << pos[u]
            self.nbr.append(row)
        self.pos = pos
        self.incumbent: list[int] = []

    def to_internal(self, mask: int) -> int:
        out = 0
        for v in _bits(mask):
            out |= 1 << self.pos[v]
        return out

    def _color_sort(self, cand: int) -> tuple[list[int], list[int]]:
        nbr = self.nbr
        order: list[int] = []
        bounds: list[int] = []
        color = 0
        rest = cand
        while rest:
            color += 1
            avail = rest
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail &= ~nbr[v] & ~low
                rest &= ~low
                order.append(v)
                bounds.append(color)
        return order, bounds

    def search(self, cand: int, best: int, current: list[int], stop_at: int | None = None) -> list[int] | None:
        """Largest clique extending ``current`` inside ``cand`` if bigger than ``best``.

        With ``stop_at`` set, return as soon as a clique of that size exists.
        """
        found: list[int] | None = None
        self.meter.tick()
        order, bounds = self._color_sort(cand)
        for i in range(len(order) - 1, -1, -1):
            if len(current) + bounds[i] <= best:
                break
            v = order[i]
            current.append(v)
            sub = cand & self.nbr[v]
            if sub:
                got = self.search(sub, best, current, stop_at)
                if got is not None:
                    found = got
                    best = len(got)
            elif len(current) > best:
                found = list(current)
                best = len(found)
                if len(found) > len(self.incumbent):
                    self.incumbent = found
            current.pop()
            if stop_at is not None and best >= stop_at:
                return found
            cand &= ~(1 << v)
        return found

    def to_external(self, clique: list[int]) -> list[int]:
        return sorted(self.order[v] for v in clique)


def max_clique(g: Graph, budget: SearchBudget = UNLIMITED, deterministic: bool = True) -> CliqueResult:
    """Maximum clique by branch and bound.

    In deterministic mode the witness is the lexicographically least maximum
    clique (as a sorted vertex list).  On budget exhaustion the best clique
    found so far is returned with ``proven_optimal=False``.
    """
    if g.n == 0:
        return CliqueResult(0, (), 0, True)
    meter = _Meter(budget)
    searcher = _CliqueSearcher(g, meter)
    best: list[int] = [0]
    try:
        got = searcher.search(g.all_vertices, 1, [])
        if got is not None:
            best = got
    except _Exhausted:
        witness = max(searcher.to_external(searcher.incumbent), _greedy_clique(g), key=len)
        return CliqueResult(len(witness), tuple(witness), meter.nodes, False)
    witness = searcher.to_external(best)
    if deterministic:
        try:
            witness = _lex_least_clique(g, searcher, len(witness))
        except _Exhausted:
            pass
    if not g.is_clique(witness):
        raise AssertionError("clique witness failed verification")
    return CliqueResult(len(witness), tuple(witness), meter.nodes, True)


def _greedy_clique(g: Graph) -> list[int]:
    cand = g.all_vertices
    clique = []
    while cand:
        v = max(_bits(cand), key=lambda u: ((g.rows[u] & cand).bit_count(), -u))
        clique.append(v)
        cand &= g.rows[v]
    return sorted(clique)


def _lex_least_clique(g: Graph, searcher: _CliqueSearcher, size: int) -> list[int]:
    chosen: list[int] = []
    cand = g.all_vertices
    for v in range(g.n):
        if len(chosen) == size:
            break
        if not cand >> v & 1:
            continue
        need = size - len(chosen) - 1
        rest = cand & g.rows[v] & ~((1 << (v + 1)) - 1)
        if need == 0:
            ok = True
        elif rest.bit_count() < need:
            ok = False
        else:
            ok = searcher.search(searcher.to_internal(rest), need - 1, [], stop_at=need) is not None
        if ok:
            chosen.append(v)
            cand = rest
    return chosen


def max_independent_set(g: Graph, budget: SearchBudget = UNLIMITED, deterministic: bool = True) -> CliqueResult:
    result = max_clique(complement(g), budget, deterministic)
    if not g.is_independent(result.witness):
        raise AssertionError("independent set witness failed verification")
    return result


def verify_coloring(g: Graph, coloring: list[int], k: int | None = None) -> bool:
    if len(coloring) != g.n:
        return False
    if k is not None and any(not 0 <= c < k for c in coloring):
        return False
    return all(coloring[u] != coloring[v] for u, v in g.edges())


def greedy_coloring(g: Graph) -> list[int]:
    """DSATUR greedy colouring (an upper bound only)."""
    n = g.n
    colors = [-1] * n
    seen = [0] * n  # bitmask of neighbour colours
    for _ in range(n):
        v = max(
            (u for u in range(n) if colors[u] < 0),
            key=lambda u: (seen[u].bit_count(), g.degree(u), -u),
        )
        c = 0
        while seen[v] >> c & 1:
            c += 1
        colors[v] = c
        for u in _bits(g.rows[v]):
            seen[u] |= 1 << c
    return colors


def _k_color_search(g: Graph, k: int, meter: _Meter) -> list[int] | None:
    n = g.n
    full = (1 << k) - 1
    colors = [-1] * n
    degree = g.degrees()

    def pick(domains: list[int]) -> int:
        best_v = -1
        best_key = None
        for u in range(n):
            if colors[u] < 0:
                key = (domains[u].bit_count(), -degree[u], u)
                if best_key is None or key < best_key:
                    best_key, best_v = key, u
        return best_v

    def solve(domains: list[int], colored: int, used: int) -> bool:
        meter.tick()
        if colored == n:
            return True
        v = pick(domains)
        # symmetry breaking: colours are opened in increasing order
        allowed = domains[v] & ((1 << min(used + 1, k)) - 1)
        for c in _bits(allowed):
            bit = 1 << c
            new = list(domains)
            dead = False
            for u in _bits(g.rows[v]):
                if colors[u] < 0:
                    new[u] &= ~bit
                    if not new[u]:
                        dead = True
                        break
            if dead:
                continue
            colors[v] = c
            if solve(new, colored + 1, max(used, c + 1)):
                return True
            colors[v] = -1
        return False

    if n == 0:
        return []
    if solve([full] * n, 0, 0):
        return list(colors)
    return None


def is_k_colorable(g: Graph, k: int, budget: SearchBudget = UNLIMITED) -> list[int] | None:
    """A proper colouring with colours ``0..k-1``, or ``None`` if none exists.

    Raises :class:`SearchInconclusive` when the budget runs out.
    """
    if k < 1:
        raise ValueError("k must be positive")
    meter = _Meter(budget)
    try:
        coloring = _k_color_search(g, k, meter)
    except _Exhausted:
        raise SearchInconclusive(f"{k}-colourability undecided after {meter.nodes} nodes") from None
    if coloring is not None and not verify_coloring(g, coloring, k):
        raise AssertionError("colouring witness failed verification")
    return coloring


def chromatic_number(g: Graph, budget: SearchBudget = UNLIMITED) -> int:
    """Exact chromatic number by bisection between clique and greedy bounds."""
    if g.n == 0:
        return 0
    clique = max_clique(g, budget, deterministic=False)
    lo = clique.size
    hi = max(greedy_coloring(g)) + 1
    try:
        while lo < hi:
            mid = (lo + hi) // 2
            if is_k_colorable(g, mid, budget) is not None:
                hi = mid
            else:
                lo = mid + 1
    except SearchInconclusive:
        raise SearchInconclusive(f"chromatic number in [{lo}, {hi}]", lo, hi) from None
    if not clique.proven_optimal and lo < hi:  # pragma: no cover - loop exits with lo == hi
        raise SearchInconclusive(f"chromatic number in [{lo}, {hi}]", lo, hi)
    return lo


def verify_homomorphism(f: Graph, g: Graph, mapping: list[int]) -> bool:
    if len(mapping) != f.n or any(not 0 <= w < g.n for w in mapping):
        return False
    return all(g.has_edge(mapping[u], mapping[v]) for u, v in f.edges())


def homomorphism(f: Graph, g: Graph, budget: SearchBudget = UNLIMITED) -> list[int] | None:
    """An edge-preserving map ``V(F) -> V(G)``, or ``None`` if none exists.

    Backtracking over vertex images with arc-consistency pruning.  Raises
    :class:`SearchInconclusive` when the budget runs out.
    """
    meter = _Meter(budget)
    n = f.n
    if n == 0:
        return []
    if g.n == 0:
        return None
    nonisolated = 0
    for w in range(g.n):
        if g.rows[w]:
            nonisolated |= 1 << w
    start = [nonisolated if f.rows[v] else g.all_vertices for v in range(n)]
    arcs = [(u, v) for u in range(n) for v in _bits(f.rows[u])]

    def support(dom: int) -> int:
        out = 0
        for w in _bits(dom):
            out |= g.rows[w]
        return out

    def propagate(domains: list[int]) -> bool:
        queue = deque(arcs)
        queued = set(arcs)
        while queue:
            u, v = queue.popleft()
            queued.discard((u, v))
            # image of u must have a neighbour among images of v
            new = domains[u] & support(domains[v])
            if new != domains[u]:
                if not new:
                    return False
                domains[u] = new
                for x in _bits(f.rows[u]):
                    if (x, u) not in queued:
                        queue.append((x, u))
                        queued.add((x, u))
        return True

    assigned = [-1] * n

    def solve(domains: list[int]) -> bool:
        meter.tick()
        free = [v for v in range(n) if assigned[v] < 0]
        if not free:
            return True
        v = min(free, key=lambda u: (domains[u].bit_count(), -f.degree(u), u))
        for w in _bits(domains[v]):
            new = list(domains)
            new[v] = 1 << w
            if propagate(new):
                assigned[v] = w
                if solve(new):
                    return True
                assigned[v] = -1
        return False

    try:
        domains = list(start)
        if not propagate(domains):
            return None
        ok = solve(domains)
    except _Exhausted:
        raise SearchInconclusive(f"homomorphism undecided after {meter.nodes} nodes") from None
    if not ok:
        return None
    mapping = list(assigned)
    if not verify_homomorphism(f, g, mapping):
        raise AssertionError("homomorphism witness failed verification")
    return mapping


def odd_girth(g: Graph) -> float:
    """Length of a shortest odd cycle, ``math.inf`` for bipartite graphs.

    BFS from ``(v, even)`` on the bipartite double cover; reaching
    ``(v, odd)`` closes a shortest odd closed walk through ``v``, and a
    shortest odd closed walk overall is a cycle.
    """
    best = math.inf
    for s in range(g.n):
        dist = {(s, 0): 0}
        queue = deque([(s, 0)])
        while queue:
            v, parity = queue.popleft()
            d = dist[(v, parity)]
            if d + 1 >= best:
                break
            for u in _bits(g.rows[v]):
                state = (u, parity ^ 1)
                if state not in dist:
                    dist[state] = d + 1
                    if state == (s, 1):
                        best = min(best, d + 1)
                    queue.append(state)
    return best


def selfcomp_square_clique(g: Graph, sigma: list[int]) -> list[int]:
    """The clique ``{(v, sigma(v))}`` in the second OR power of ``g``.

    ``sigma`` must be a complementing permutation; for ``u != v`` exactly one
    of ``{u, v}`` and ``{sigma u, sigma v}`` is an edge, so every pair of the
    returned vertices is adjacent in ``g . g``.
    """
    n = g.n
    if sorted(sigma) != list(range(n)):
        raise GraphError("sigma is not a permutation")
    for u in range(n):
        for v in range(u + 1, n):
            if g.has_edge(u, v) == g.has_edge(sigma[u], sigma[v]):
                raise GraphError(f"sigma is not complementing at pair ({u}, {v})")
    clique = [v * n + sigma[v] for v in range(n)]
    square = or_power(g, 2)
    if not square.is_clique(clique):
        raise AssertionError("square clique failed verification")
    return clique
