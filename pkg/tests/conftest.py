import random

import pytest

from haarforge.constructions import Graph
from haarforge.groups import (
    cyclic,
    direct_product,
    generalized_dihedral,
    semidirect_cyclic,
)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph(n, edges)


def girth_oracle(graph: Graph):
    """Independent girth: min over edges e of 1 + dist(u, v) in G - e."""
    best = float("inf")
    for u, v in graph.edges():
        dist = {u: 0}
        queue = [u]
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            for w in graph.neighbors(x):
                if x == u and w == v:
                    continue
                if w not in dist:
                    dist[w] = dist[x] + 1
                    queue.append(w)
        if v in dist:
            best = min(best, dist[v] + 1)
    return best


@pytest.fixture(scope="session")
def small_groups():
    return {
        "z1": cyclic(1),
        "z5": cyclic(5),
        "z6": cyclic(6),
        "z8": cyclic(8),
        "klein4": direct_product(cyclic(2), cyclic(2)),
        "s3": generalized_dihedral(cyclic(3)),
        "d4": generalized_dihedral(cyclic(4)),
        "d5": generalized_dihedral(cyclic(5)),
        "f20": semidirect_cyclic(5, 4, 2),
        "z4xz2": direct_product(cyclic(4), cyclic(2)),
    }


@pytest.fixture(scope="session")
def order20_catalog_dir():
    from pathlib import Path

    import haarforge

    path = Path(haarforge.__file__).parent / "data" / "order20"
    assert path.is_dir(), "shipped catalog missing"
    return path
