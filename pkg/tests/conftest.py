import itertools
import math

import numpy as np
import pytest

from dwbc.config import random_params

# (left, right, bottom, top) -> weight class, written out from the vertex table
VERTEX_CLASS = {
    (1, 1, 1, 1): "a",
    (-1, -1, -1, -1): "a",
    (1, 1, -1, -1): "b",
    (-1, -1, 1, 1): "b",
    (1, -1, -1, 1): "c",
    (-1, 1, 1, -1): "c",
}


def naive_configurations(left, right, top, bottom):
    """Every assignment of the internal bonds, kept when all vertices are allowed.

    Arguments are arrow directions (+1 right/up, -1 left/down), columns listed
    left to right.  Returns a list of class grids (rows top first, columns left
    to right).  Shares no code with the package's enumerator.
    """
    R, C = len(left), len(top)
    n_h, n_v = R * (C - 1), (R - 1) * C
    found = []
    for bits in itertools.product((1, -1), repeat=n_h + n_v):
        h = np.empty((R, C + 1), dtype=int)
        v = np.empty((R + 1, C), dtype=int)
        h[:, 0], h[:, C] = left, right
        v[0, :], v[R, :] = top, bottom
        h[:, 1:C] = np.array(bits[:n_h]).reshape(R, C - 1) if n_h else h[:, 1:C]
        v[1:R, :] = np.array(bits[n_h:]).reshape(R - 1, C) if n_v else v[1:R, :]
        classes = []
        for i in range(R):
            row = []
            for k in range(C):
                key = (h[i, k], h[i, k + 1], v[i + 1, k], v[i, k])
                if key not in VERTEX_CLASS:
                    break
                row.append(VERTEX_CLASS[key])
            else:
                classes.append(row)
                continue
            break
        else:
            found.append(classes)
    return found


def naive_dwbc_partition(lam, xs, ys):
    """Z_N from the naive enumeration; ``ys[0]`` is the rightmost column."""
    n = len(xs)
    left, right = [1] * n, [-1] * n
    top, bottom = [1] * n, [-1] * n
    cols = list(reversed(ys))  # left to right
    w = {
        "a": lambda x, y: math.sinh(lam * (y - x + 1)),
        "b": lambda x, y: math.sinh(lam * (y - x)),
        "c": lambda x, y: math.sinh(lam),
    }
    total = 0.0
    for grid in naive_configurations(left, right, top, bottom):
        total += math.prod(w[grid[i][k]](xs[i], cols[k]) for i in range(n) for k in range(n))
    return total


@pytest.fixture
def rng(request):
    # one stream per test, stable across runs and independent of test order
    seed = sum(request.node.name.encode())
    return np.random.default_rng(seed)


@pytest.fixture
def draw(rng):
    def make(n_rows, n_cols=None, lam=None):
        return random_params(rng, n_rows, n_cols, lam)

    return make


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
