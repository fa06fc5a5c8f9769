"""Randomized property checks over small graphs.

Each check draws graphs from a seeded generator and reports every failing
instance, so the same seed always replays the same trials.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .graph import (
    Graph,
    and_product,
    complement,
    cycle_graph,
    join,
    make_graph,
    or_product,
    tensor_product,
)
from .search import homomorphism, max_clique, odd_girth
from .theta import SolverConfig, theta_bar

__all__ = [
    "PropertyResult",
    "random_graph",
    "check_de_morgan",
    "check_clique_hedetniemi",
    "check_odd_girth_hedetniemi",
    "check_theta_spectrum",
    "check_theta_hom_monotone",
    "check_odd_cycle_homs",
    "run_all",
]


@dataclass
class PropertyResult:
    name: str
    trials: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.trials > 0 and not self.failures

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.trials} trials, {len(self.failures)} failures"


def random_graph(rng: random.Random, n_min: int, n_max: int, density: float | None = None) -> Graph:
    n = rng.randint(n_min, n_max)
    p = rng.uniform(0.2, 0.8) if density is None else density
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return make_graph(n, edges)


def check_de_morgan(rng: random.Random, pairs: int = 200, n_max: int = 6) -> PropertyResult:
    res = PropertyResult("complement of OR product equals AND product of complements")
    for _ in range(pairs):
        f, g = random_graph(rng, 1, n_max), random_graph(rng, 1, n_max)
        res.trials += 1
        if complement(or_product(f, g)).rows != and_product(complement(f), complement(g)).rows:
            res.failures.append(f"{f.edges()} / {g.edges()}")
    return res


def check_clique_hedetniemi(rng: random.Random, pairs: int = 100, n_max: int = 7) -> PropertyResult:
    res = PropertyResult("clique number of tensor product is the smaller clique number")
    for _ in range(pairs):
        f, g = random_graph(rng, 1, n_max), random_graph(rng, 1, n_max)
        res.trials += 1
        lhs = max_clique(tensor_product(f, g)).size
        rhs = min(max_clique(f).size, max_clique(g).size)
        if lhs != rhs:
            res.failures.append(f"{f.edges()} / {g.edges()}: {lhs} != {rhs}")
    return res


def _random_nonbipartite(rng: random.Random, n_max: int) -> Graph:
    while True:
        g = random_graph(rng, 3, n_max)
        if odd_girth(g) != math.inf:
            return g


def check_odd_girth_hedetniemi(rng: random.Random, pairs: int = 50, n_max: int = 8) -> PropertyResult:
    res = PropertyResult("odd girth of tensor product is the larger odd girth")
    for _ in range(pairs):
        f, g = _random_nonbipartite(rng, n_max), _random_nonbipartite(rng, n_max)
        res.trials += 1
        lhs = odd_girth(tensor_product(f, g))
        rhs = max(odd_girth(f), odd_girth(g))
        if lhs != rhs:
            res.failures.append(f"{f.edges()} / {g.edges()}: {lhs} != {rhs}")
    return res


def check_theta_spectrum(
    rng: random.Random, pairs: int = 30, n_max: int = 8, rel: float = 1e-3, cfg: SolverConfig = SolverConfig()
) -> PropertyResult:
    """Normalisation, join additivity and OR-product multiplicativity of theta-bar."""
    res = PropertyResult("theta-bar normalised, additive on joins, multiplicative on OR products")
    one = theta_bar(make_graph(1, []), cfg)
    if abs(one.value - 1.0) > rel:
        res.failures.append(f"theta-bar(K1) = {one.value}")
    for _ in range(pairs):
        f, g = random_graph(rng, 1, n_max), random_graph(rng, 1, n_max)
        res.trials += 1
        tf, tg = theta_bar(f, cfg).value, theta_bar(g, cfg).value
        tj = theta_bar(join(f, g), cfg).value
        to = theta_bar(or_product(f, g), cfg).value
        if abs(tj - tf - tg) > rel * (tf + tg):
            res.failures.append(f"join: {tj} vs {tf} + {tg} for {f.edges()} / {g.edges()}")
        if abs(to - tf * tg) > rel * tf * tg:
            res.failures.append(f"OR product: {to} vs {tf} * {tg} for {f.edges()} / {g.edges()}")
    return res


def check_theta_hom_monotone(
    rng: random.Random, pairs: int = 30, n_max: int = 8, cfg: SolverConfig = SolverConfig()
) -> PropertyResult:
    res = PropertyResult("theta-bar is monotone along homomorphisms")
    attempts = 0
    while res.trials < pairs:
        attempts += 1
        if attempts > 100 * pairs:
            res.failures.append(f"only {res.trials} hom-related pairs found in {attempts} draws")
            break
        f = random_graph(rng, 2, n_max)
        g = random_graph(rng, 2, n_max)
        if homomorphism(f, g) is None:
            continue
        res.trials += 1
        lo_f = theta_bar(f, cfg).lower
        hi_g = theta_bar(g, cfg).upper
        if lo_f > hi_g + 1e-4:
            res.failures.append(f"{lo_f} > {hi_g} for {f.edges()} -> {g.edges()}")
    return res


def check_odd_cycle_homs(lengths: tuple[int, ...] = (3, 5, 7, 9)) -> PropertyResult:
    """``C_a -> C_b`` for odd cycles exactly when ``a >= b``."""
    res = PropertyResult("odd cycles map exactly onto shorter or equal odd cycles")
    for a in lengths:
        for b in lengths:
            res.trials += 1
            exists = homomorphism(cycle_graph(a), cycle_graph(b)) is not None
            if exists != (a >= b):
                res.failures.append(f"C{a} -> C{b}: found {exists}")
    return res


def run_all(seed: int = 0, quick: bool = False) -> list[PropertyResult]:
    scale = 5 if quick else 1
    rng = random.Random(seed)
    return [
        check_de_morgan(rng, 200 // scale),
        check_clique_hedetniemi(rng, 100 // scale),
        check_odd_girth_hedetniemi(rng, 50 // scale),
        check_theta_spectrum(rng, 30 // scale),
        check_theta_hom_monotone(rng, 30 // scale),
        check_odd_cycle_homs(),
    ]
