import os

import pytest

from biconic import _kernels


@pytest.fixture
def restore_env():
    old = os.environ.get("BICONIC_KERNELS")
    yield
    if old is None:
        os.environ.pop("BICONIC_KERNELS", None)
    else:
        os.environ["BICONIC_KERNELS"] = old


def test_backend_selection(restore_env):
    os.environ["BICONIC_KERNELS"] = "numpy"
    assert _kernels.backend() == "numpy"
    os.environ["BICONIC_KERNELS"] = "numba"
    assert _kernels.backend() in ("numba", "numpy")  # numpy when numba missing


CONICS = [
    (1, 1, -1, 0, 0, 0),
    (2, 3, -5, 0, 0, 0),
    (1, 1, -3, 0, 0, 0),       # no solutions at all
    (3, -2, 1, 1, -1, 2),
    (1, 1, -13, 0, 0, 0),
]


def test_conic_search_backends_agree(restore_env):
    for coeffs in CONICS:
        results = {}
        for which in ("numba", "numpy"):
            os.environ["BICONIC_KERNELS"] = which
            results[which] = _kernels.conic_search(coeffs, 12)
        assert results["numba"] == results["numpy"], coeffs
        got = results["numba"]
        if got is not None:
            a, b, c, d, e, f = coeffs
            x, y, z = got
            assert a * x * x + b * y * y + c * z * z + d * x * y + e * x * z + f * y * z == 0


def test_conic_search_finds_minimum(restore_env):
    os.environ["BICONIC_KERNELS"] = "numpy"
    got = _kernels.conic_search((1, 1, -1, 0, 0, 0), 6)
    assert got is not None and max(abs(v) for v in got) == 1  # e.g. (-1, 0, -1) ring 1


def test_conic_search_overflow_path():
    big = 2 ** 40
    got = _kernels.conic_search((big, -big, 0, 0, 0, 0), 3)
    assert got is not None
    x, y, z = got
    assert big * x * x - big * y * y == 0


def test_surface_search_backends_agree(restore_env):
    co = (1, 0, 1, 0, 0, 0, 0, 0, 0, 4, 0, 0, 0, 0, 0)  # x^4 + 4x^2y^2 + z^4
    results = {}
    for which in ("numba", "numpy"):
        os.environ["BICONIC_KERNELS"] = which
        results[which] = sorted(_kernels.surface_search(co, 3))
    assert results["numba"] == results["numpy"]
    assert (1, 0, 0, 1) in results["numpy"]
    for x, y, z, w in results["numpy"]:
        assert w * w == x ** 4 + 4 * x * x * y * y + z ** 4
