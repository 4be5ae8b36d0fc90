from collections import Counter
from itertools import combinations

import numpy as np
import pytest

from adesign.incidence import IncidenceStructure, from_blocks

FANO_BLOCKS = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]


def naive_histogram(structure: IncidenceStructure, t: int) -> Counter:
    """Recount r_Y for every t-subset by testing each block, with no bitsets."""
    histogram: Counter = Counter()
    for subset in combinations(range(structure.v), t):
        histogram[sum(1 for block in structure.blocks if set(subset) <= set(block))] += 1
    return histogram


def cycle_graph(n: int) -> np.ndarray:
    a = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        a[i, (i + 1) % n] = a[(i + 1) % n, i] = 1
    return a


def petersen_graph() -> np.ndarray:
    """Kneser graph K(5,2): 2-subsets of a 5-set, adjacent when disjoint."""
    vertices = list(combinations(range(5), 2))
    a = np.zeros((10, 10), dtype=np.int64)
    for i, x in enumerate(vertices):
        for j, y in enumerate(vertices):
            if not set(x) & set(y):
                a[i, j] = 1
    return a


@pytest.fixture
def fano() -> IncidenceStructure:
    return from_blocks(7, FANO_BLOCKS)


@pytest.fixture
def petersen() -> np.ndarray:
    return petersen_graph()


@pytest.fixture
def oracle():
    return naive_histogram
