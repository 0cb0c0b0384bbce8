import math
import warnings

import mpmath
import pytest
from scipy import special as sp

from bateman_havelock.special import (
    airy_ai,
    cos_half_pi,
    half_pochhammer,
    lower_gamma_int,
    sin_half_pi,
)


def test_airy_at_zero_matches_gamma_identity():
    ai0 = math.gamma(1 / 3) / (2 * 3 ** (1 / 6) * math.pi)
    assert airy_ai(0.0) == pytest.approx(ai0, rel=1e-14)
    assert airy_ai(0.0) == pytest.approx(0.3550280539, abs=1e-10)


def test_airy_at_one_against_quadrature():
    # Ai(z) = (1/pi) int_0^inf cos(t^3/3 + z t) dt, evaluated independently
    ref = mpmath.quadosc(lambda t: mpmath.cos(t ** 3 / 3 + t), [0, mpmath.inf],
                         zeros=lambda n: mpmath.cbrt(3 * mpmath.pi * n)) / mpmath.pi
    assert airy_ai(1.0) == pytest.approx(float(ref), rel=1e-10)
    assert airy_ai(1.0) == pytest.approx(0.1352924163, abs=1e-10)


def test_airy_first_zero():
    z0 = -2.338107410459767
    assert abs(airy_ai(z0)) < 1e-12
    assert airy_ai(z0 - 0.01) * airy_ai(z0 + 0.01) < 0


@pytest.mark.parametrize("z", [-60.0, -20.0, -11.9, -12.1, -5.0, -1.0, 0.5, 3.0, 11.9, 12.1, 25.0, 80.0])
def test_airy_against_scipy(z):
    ref = sp.airy(z)[0]
    assert airy_ai(z) == pytest.approx(ref, rel=1e-10, abs=1e-13 * abs(ref) + 1e-300)


def test_airy_underflow_and_range():
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        assert airy_ai(200.0) == 0.0
        assert any(issubclass(x.category, RuntimeWarning) for x in w)
    with pytest.raises(ValueError):
        airy_ai(-2000.0)


@pytest.mark.parametrize("n,z,want", [(0, 1.0, 1 - math.exp(-1)), (2, 1.0, 2 * (1 - 2.5 / math.e)), (4, 0.0, 0.0)])
def test_lower_gamma_examples(n, z, want):
    assert lower_gamma_int(n, z) == pytest.approx(want, rel=1e-14, abs=1e-300)


@pytest.mark.parametrize("n", [0, 1, 3, 8, 16, 24])
@pytest.mark.parametrize("z", [1e-3, 0.5, 5.3, 10.0, 40.0])
def test_lower_gamma_against_mpmath(n, z):
    ref = float(mpmath.gammainc(n + 1, 0, z))
    assert lower_gamma_int(n, z) == pytest.approx(ref, rel=1e-12)


def test_lower_gamma_domain():
    with pytest.raises(ValueError):
        lower_gamma_int(-1, 1.0)
    with pytest.raises(ValueError):
        lower_gamma_int(1, -1.0)


def test_half_pi_trig_exact_at_integers():
    for n in range(12):
        s, c = sin_half_pi(n), cos_half_pi(n)
        assert s in (-1.0, 0.0, 1.0) and c in (-1.0, 0.0, 1.0)
        if n % 2 == 0:
            assert s == 0.0
        else:
            assert c == 0.0
    assert sin_half_pi(2.5) == pytest.approx(math.sin(1.25 * math.pi), rel=1e-15)


def test_half_pochhammer():
    assert half_pochhammer(0.5, 0) == 1.0
    assert half_pochhammer(0.5, 3) == pytest.approx(0.5 * 1.5 * 2.5)
