"""Finite fields GF(p^k) and Paley graphs with vertex-deleted variants.

Field elements are integers ``0..q-1``: the base-``p`` digits of an element,
least significant first, are its polynomial coefficients (constant term
first).  For ``k == 1`` this is ordinary residue arithmetic.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .graph import Graph, _from_rows, delete_vertices

__all__ = [
    "FieldError",
    "FiniteField",
    "VerificationError",
    "ComplementWitness",
    "z_pair",
    "PaleyVariant",
    "is_prime",
    "prime_power",
    "build_field",
    "nonzero_squares",
    "paley_graph",
    "paley_family",
    "self_complement_witness",
    "transitivity_generators",
    "is_complementing",
    "is_automorphism",
    "vertex_orbit",
    "edge_orbit",
]

FIELD_BUDGET = 1 << 16


class FieldError(ValueError):
    pass


class VerificationError(RuntimeError):
    """An algebraic certificate failed its independent check."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    for d in range(2, math.isqrt(p) + 1):
        if p % d == 0:
            return False
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, k)`` with ``q == p**k`` and ``p`` prime, or ``None``."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                return None
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return None


def _digits(x: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        x, r = divmod(x, p)
        out.append(r)
    return out


def _undigits(cs: list[int], p: int) -> int:
    x = 0
    for c in reversed(cs):
        x = x * p + c
    return x


def _polymulmod(a: list[int], b: list[int], modulus: list[int], p: int) -> list[int]:
    k = len(modulus) - 1
    prod = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # modulus is monic: x^k = -(m_0 + ... + m_{k-1} x^{k-1})
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for i in range(k):
                prod[d - k + i] = (prod[d - k + i] - c * modulus[i]) % p
    return prod[:k]


def _has_root(poly: list[int], p: int) -> bool:
    for x in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % p
        if acc == 0:
            return True
    return False


def _poly_divides(d: list[int], f: list[int], p: int) -> bool:
    """Whether monic ``d`` divides ``f`` over GF(p) (coefficients low first)."""
    r = list(f)
    dd = len(d) - 1
    for top in range(len(r) - 1, dd - 1, -1):
        c = r[top]
        if c:
            for i in range(dd + 1):
                r[top - dd + i] = (r[top - dd + i] - c * d[i]) % p
    return not any(r[:dd])


def _is_irreducible(poly: list[int], p: int) -> bool:
    k = len(poly) - 1
    if k <= 1:
        return True
    if _has_root(poly, p):
        return False
    for deg in range(2, k // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if _poly_divides(list(low) + [1], poly, p):
                return False
    return True


@dataclass(frozen=True)
class FiniteField:
    p: int
    k: int
    modulus: tuple[int, ...]
    exp_table: tuple[int, ...]
    log_table: tuple[int, ...]  # log_table[0] is unused (-1)

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def primitive(self) -> int:
        return self.exp_table[1] if self.q > 2 else 1

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return _undigits(
            [(x + y) % self.p for x, y in zip(_digits(a, self.p, self.k), _digits(b, self.p, self.k))],
            self.p,
        )

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return _undigits([-x % self.p for x in _digits(a, self.p, self.k)], self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no discrete logarithm")
        return self.log_table[a]


def _raw_mul(a: int, b: int, p: int, k: int, modulus: list[int]) -> int:
    if k == 1:
        return a * b % p
    return _undigits(_polymulmod(_digits(a, p, k), _digits(b, p, k), modulus, p), p)


@lru_cache(maxsize=None)
def build_field(p: int, k: int = 1) -> FiniteField:
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError("extension degree must be at least 1")
    q = p**k
    if q > FIELD_BUDGET:
        raise FieldError(f"field order {q} exceeds budget {FIELD_BUDGET}")
    if k == 1:
        modulus = [0, 1]
    else:
        for low in itertools.product(range(p), repeat=k):
            # the constant term varies fastest, so monic candidates come in
            # increasing order of their base-p value
            cand = list(reversed(low)) + [1]
            if _is_irreducible(cand, p):
                modulus = cand
                break
        else:  # pragma: no cover - irreducibles exist for every degree
            raise FieldError("no irreducible polynomial found")
    for g in range(1, q):
        exp = [1]
        x = 1
        for _ in range(q - 2):
            x = _raw_mul(x, g, p, k, modulus)
            if x == 1:
                break
            exp.append(x)
        if len(exp) == q - 1:
            break
    else:  # pragma: no cover
        raise FieldError("no primitive element found")
    log = [-1] * q
    for i, x in enumerate(exp):
        log[x] = i
    return FiniteField(p, k, tuple(modulus), tuple(exp), tuple(log))


def _field_of_order(q: int) -> FiniteField:
    pk = prime_power(q)
    if pk is None:
        raise FieldError(f"{q} is not a prime power")
    return build_field(*pk)


def nonzero_squares(field: FiniteField) -> frozenset[int]:
    if field.p == 2:
        raise FieldError("squares are only tabulated for odd q")
    return frozenset(field.exp_table[0::2])


class PaleyVariant(enum.Enum):
    FULL = "full"
    ONE_DELETED = "one-deleted"
    TWO_DELETED_ADJACENT = "two-deleted-adjacent"
    TWO_DELETED_NONADJACENT = "two-deleted-nonadjacent"


def _check_paley_order(q: int) -> FiniteField:
    if q % 2 == 0:
        raise FieldError(f"Paley graphs need odd q, got {q}")
    field = _field_of_order(q)
    if q % 4 != 1:
        raise FieldError(f"Paley graphs need q = 1 mod 4, got {q}")
    return field


def _least_square(field: FiniteField) -> int:
    return min(nonzero_squares(field))


def _least_nonsquare(field: FiniteField) -> int:
    sq = nonzero_squares(field)
    return min(x for x in range(1, field.q) if x not in sq)


@lru_cache(maxsize=None)
def paley_graph(q: int) -> Graph:
    field = _check_paley_order(q)
    sq = nonzero_squares(field)
    rows = []
    for a in range(q):
        row = 0
        for b in range(q):
            if b != a and field.sub(a, b) in sq:
                row |= 1 << b
        rows.append(row)
    return _from_rows(rows, f"P{q}")


def paley_family(q: int, variant: PaleyVariant | str = PaleyVariant.FULL) -> Graph:
    variant = PaleyVariant(variant)
    p_q = paley_graph(q)
    field = _field_of_order(q)
    if variant is PaleyVariant.FULL:
        return p_q
    if variant is PaleyVariant.ONE_DELETED:
        return delete_vertices(p_q, [0]).with_label(f"Q{q - 1}")
    if variant is PaleyVariant.TWO_DELETED_ADJACENT:
        return delete_vertices(p_q, [0, _least_square(field)]).with_label(f"Z{q - 2}a")
    return delete_vertices(p_q, [0, _least_nonsquare(field)]).with_label(f"Z{q - 2}n")


def is_complementing(g: Graph, sigma: list[int]) -> bool:
    """Whether ``sigma`` maps edges exactly onto non-edges of ``g``."""
    n = g.n
    if sorted(sigma) != list(range(n)):
        return False
    for u in range(n):
        for v in range(u + 1, n):
            if g.has_edge(u, v) == g.has_edge(sigma[u], sigma[v]):
                return False
    return True


def is_automorphism(g: Graph, perm: list[int]) -> bool:
    n = g.n
    if sorted(perm) != list(range(n)):
        return False
    return all(
        g.has_edge(u, v) == g.has_edge(perm[u], perm[v])
        for u in range(n)
        for v in range(u + 1, n)
    )


@dataclass(frozen=True)
class ComplementWitness:
    multiplier: int
    paley: tuple[int, ...]
    one_deleted: tuple[int, ...]


def self_complement_witness(q: int) -> ComplementWitness:
    """Complementing permutations ``x -> t*x`` of ``P_q`` and of ``Q_{q-1}``.

    ``t`` is the least nonsquare.  Multiplication fixes 0, so it restricts
    to the graph with vertex 0 deleted (relabelled ``v -> v - 1``).
    """
    field = _check_paley_order(q)
    t = _least_nonsquare(field)
    sigma = [field.mul(t, x) for x in range(q)]
    g = paley_graph(q)
    if not is_complementing(g, sigma):
        raise VerificationError(f"x -> {t}x is not complementing on P{q}")
    restricted = [sigma[v + 1] - 1 for v in range(q - 1)]
    if not is_complementing(paley_family(q, PaleyVariant.ONE_DELETED), restricted):
        raise VerificationError(f"restriction to Q{q - 1} is not complementing")
    return ComplementWitness(t, tuple(sigma), tuple(restricted))


def vertex_orbit(perms: list[list[int]], start: int) -> set[int]:
    seen = {start}
    frontier = [start]
    while frontier:
        v = frontier.pop()
        for perm in perms:
            w = perm[v]
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return seen


def edge_orbit(perms: list[list[int]], edge: tuple[int, int]) -> set[tuple[int, int]]:
    start = tuple(sorted(edge))
    seen = {start}
    frontier = [start]
    while frontier:
        a, b = frontier.pop()
        for perm in perms:
            e = tuple(sorted((perm[a], perm[b])))
            if e not in seen:
                seen.add(e)
                frontier.append(e)
    return seen


def transitivity_generators(q: int) -> list[list[int]]:
    """Automorphisms ``x -> x + 1`` and ``x -> s*x`` of ``P_q``.

    ``s`` is the least element generating the group of nonzero squares.  The
    generated group is checked to act transitively on vertices and edges.
    """
    field = _check_paley_order(q)
    squares = nonzero_squares(field)
    half = (q - 1) // 2
    s = min(x for x in squares if math.gcd(field.log(x) // 2, half) == 1)
    gens = [
        [field.add(x, 1) for x in range(q)],
        [field.mul(s, x) for x in range(q)],
    ]
    g = paley_graph(q)
    for perm in gens:
        if not is_automorphism(g, perm):
            raise VerificationError(f"generator is not an automorphism of P{q}")
    if len(vertex_orbit(gens, 0)) != q:
        raise VerificationError("generators are not vertex-transitive")
    if len(edge_orbit(gens, (0, _least_square(field)))) != g.num_edges:
        raise VerificationError("generators are not edge-transitive")
    return gens


def z_pair(q: int) -> tuple[Graph, Graph]:
    return (
        paley_family(q, PaleyVariant.TWO_DELETED_ADJACENT),
        paley_family(q, PaleyVariant.TWO_DELETED_NONADJACENT),
    )
