import itertools
import random

import pytest

from hedcap.graph import Graph, make_graph


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return make_graph(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p])


def brute_clique_number(g: Graph) -> int:
    best = 0
    for k in range(1, g.n + 1):
        if any(g.is_clique(s) for s in itertools.combinations(range(g.n), k)):
            best = k
        else:
            break
    return best


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
