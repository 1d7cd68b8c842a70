"""Shared fixtures: small named hypergraphs and a seeded random factory."""

from itertools import combinations, combinations_with_replacement
from typing import Callable

import numpy as np
import pytest

from hhb.catalog import frankl_triangle_biased
from hhb.hypergraph import WeightedHypergraph
from hhb.multiset import Multiset


def graph(n: int, edges: dict[tuple[int, ...], float]) -> WeightedHypergraph:
    """Hypergraph on vertices "0".."n-1" from tuple faces, normalized."""
    return WeightedHypergraph.build(
        len(next(iter(edges))),
        [str(v) for v in range(n)],
        {Multiset.of(face): w for face, w in edges.items()},
        normalize=True,
    )


def random_hypergraph(
    seed: int, k: int | None = None, max_vertices: int = 5, loops: bool = True
) -> WeightedHypergraph:
    """Random k-uniform hypergraph with at most max_vertices vertices.

    Without loops every face has k distinct vertices, which keeps every
    level minimum at or below 0.
    """
    rng = np.random.default_rng(seed)
    k = int(rng.choice([2, 3])) if k is None else k
    low = 2 if loops else k + 1
    n = int(rng.integers(low, max(low, max_vertices) + 1))
    pool = combinations_with_replacement if loops else combinations
    candidates = list(pool(range(n), k))
    chosen = [face for face in candidates if rng.random() < 0.5]
    if not chosen:
        chosen = [candidates[int(rng.integers(len(candidates)))]]
    weights = {face: float(rng.random()) + 0.05 for face in chosen}
    return graph(n, weights)


@pytest.fixture
def frankl():
    """p-biased Frankl triangle at p = 0.6."""
    return frankl_triangle_biased(0.6).hypergraph


@pytest.fixture
def cycle5():
    return graph(5, {(i, (i + 1) % 5): 1.0 for i in range(5)})


@pytest.fixture
def triangle():
    return graph(3, {(0, 1): 1.0, (1, 2): 1.0, (0, 2): 1.0})


@pytest.fixture
def make_random() -> Callable[..., WeightedHypergraph]:
    return random_hypergraph
