import math

import numpy as np
import pytest

from bateman_havelock.quadrature import gauss_legendre, tanh_sinh, tanh_sinh_segments, wynn_epsilon


def test_tanh_sinh_smooth():
    q = tanh_sinh(np.exp, 0.0, 1.0)
    assert q.value == pytest.approx(math.e - 1, rel=1e-15)
    assert q.error < 1e-13


def test_tanh_sinh_endpoint_singularity_with_offsets():
    # int_0^1 t^(-1/2) dt = 2; the integrand sees offsets from 0, not 0 + tiny
    q = tanh_sinh(lambda s: s ** -0.5, 0.0, 1.0, offsets=True)
    assert q.value == pytest.approx(2.0, rel=1e-13)


def test_tanh_sinh_segments():
    q = tanh_sinh_segments(np.cos, [0.0, 1.0, 2.0, math.pi])
    assert abs(q.value) < 1e-14


def test_error_estimate_tracks_truth():
    f = lambda t: 1.0 / (1.0 + 25 * t * t)  # noqa: E731
    exact = 2 * math.atan(5) / 5
    for level in (4, 5, 6):
        q = tanh_sinh(f, -1.0, 1.0, level=level)
        assert abs(q.value - exact) <= max(10 * q.error, 1e-15)


def test_wynn_on_alternating_harmonic():
    s = np.cumsum([(-1) ** k / (k + 1) for k in range(20)])
    est, err = wynn_epsilon(s)
    assert est == pytest.approx(math.log(2), abs=1e-12)
    assert err < 1e-8


def test_gauss_legendre_exact_for_polynomials():
    x, w = gauss_legendre(5)
    assert np.dot(w, x ** 8) == pytest.approx(2 / 9, rel=1e-14)
