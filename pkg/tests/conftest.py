import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cksim.graphs import SimpleGraph


@pytest.fixture
def k4():
    u = np.array([0, 0, 0, 1, 1, 2])
    v = np.array([1, 2, 3, 2, 3, 3])
    return SimpleGraph.from_edges(4, u, v)


@pytest.fixture
def triangle_with_pendant():
    # C3 on {0,1,2} plus pendant 3 attached to 0; degrees (3, 2, 2, 1)
    u = np.array([0, 0, 1, 0])
    v = np.array([1, 2, 2, 3])
    return SimpleGraph.from_edges(4, u, v)


@pytest.fixture
def path3():
    return SimpleGraph.from_edges(3, np.array([0, 1]), np.array([1, 2]))


@pytest.fixture
def star5():
    u = np.zeros(5, dtype=np.int64)
    v = np.arange(1, 6)
    return SimpleGraph.from_edges(6, u, v)
