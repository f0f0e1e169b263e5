"""Shared fixtures for the conirep test suite."""

import numpy as np
import pytest

# Two-neuron matrix whose cone is the wedge between (1, 1) and (1, 0).
# Columns 1 and 3 are extreme, columns 2 and 4 are conic combinations.
WEDGE = np.array([[1.0, 3.0, 1.0, 2.0],
                  [1.0, 2.0, 0.0, 1.0]])

# Full-rank 3-state matrix with a tilted third ray; its complement splits
# into five positive-volume pieces inside the unit cube.
TILTED = np.array([[2.0, 3.0, 0.0],
                   [3.0, 1.0, 0.0],
                   [1.0, 1.0, 1.0]])


@pytest.fixture
def wedge():
    return WEDGE.copy()


@pytest.fixture
def tilted():
    return TILTED.copy()


def random_activity(rng, m, n, high=3.0):
    """Random nonnegative activity matrix with entries in [0, high)."""
    return rng.uniform(0.0, high, size=(m, n))


@pytest.fixture(scope="session", autouse=True)
def _warmup():
    # First call pays scipy/qhull import cost; keep it out of timed tests.
    from conirep import evaluate, ir_num

    evaluate(WEDGE)
    ir_num(np.eye(2), 4)
