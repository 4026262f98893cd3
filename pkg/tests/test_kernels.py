import numpy as np
import pytest

from iwahori import _kernels, group_of, preset
from iwahori import oracle


@pytest.mark.parametrize("name", ["A2", "C2", "G2", "A3"])
def test_backends_agree(name):
    g = group_of(preset(name, "coweight"))
    xs = [x for sh in g.ball(5) for x in sh]
    a = g.lengths(xs, use_numba=True)
    b = g.lengths(xs, use_numba=False)
    assert np.array_equal(a, b)
    assert list(a) == [g.length(x) for x in xs]
    h1 = oracle.lengths_by_hyperplanes(xs, use_numba=True)
    h2 = oracle.lengths_by_hyperplanes(xs, use_numba=False)
    assert np.array_equal(h1, h2) and np.array_equal(h1, a)


def test_random_arrays():
    rng = np.random.default_rng(0)
    mu = rng.integers(-9, 9, size=(50, 3))
    flags = rng.integers(0, 2, size=(50, 6))
    roots = rng.integers(0, 2, size=(6, 3))
    assert np.array_equal(
        _kernels.closed_form_lengths(mu, flags, roots, use_numba=True),
        _kernels.closed_form_lengths(mu, flags, roots, use_numba=False),
    )
    pts = rng.integers(-40, 40, size=(30, 2))
    bounds = rng.integers(1, 6, size=30)
    roots = np.array([[1, 0], [0, 1], [1, 1], [-1, 0], [0, -1], [-1, -1]])
    args = (pts, np.array([1, 1]), 3, roots, bounds)
    assert np.array_equal(_kernels.hyperplane_counts(*args, use_numba=True),
                          _kernels.hyperplane_counts(*args, use_numba=False))


def test_empty():
    assert len(_kernels.hyperplane_counts(np.zeros((0, 2)), np.array([1, 1]), 3,
                                          np.array([[1, 0]]), np.zeros(0), use_numba=False)) == 0
    assert _kernels.backend() in ("numba", "numpy")


def test_env_flag_forces_numpy():
    import os
    import subprocess
    import sys

    env = dict(os.environ, IWAHORI_NO_NUMBA="1")
    r = subprocess.run([sys.executable, "-c", "from iwahori import _kernels; print(_kernels.backend())"],
                       env=env, capture_output=True, text=True, check=True)
    assert r.stdout.strip() == "numpy"
