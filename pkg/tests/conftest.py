import mpmath
import pytest

from bateman_havelock.series import context


@pytest.fixture
def mp():
    """A private 40-digit mpmath context."""
    return context(40)


def rel(a, b):
    return abs(a - b) / abs(b)


def close_series(s, expected, tol):
    assert len(s) >= len(expected)
    for got, want in zip(s.coeffs, expected):
        assert abs(got - want) <= tol, (got, want)


@pytest.fixture(autouse=True)
def _mp_precision():
    # tests that use bare mpmath get a known working precision
    with mpmath.workdps(50):
        yield
