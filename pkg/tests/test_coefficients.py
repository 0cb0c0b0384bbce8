import json
from pathlib import Path

import mpmath
import pytest

from bateman_havelock.closed_forms import PRINTED, closed_form
from bateman_havelock.coefficients import (
    MAX_INDEX,
    CoefficientFamily,
    DomainError,
    generate_family,
)

GOLDEN = Path(__file__).parent / "golden" / "B6.json"
with mpmath.workdps(50):
    MU = mpmath.cbrt(3) * mpmath.expjpi(mpmath.mpf(1) / 6)

GRID = {
    "A": (1.5, 2.0, 3.0),
    "AhatEven": (0.25, 0.5, 0.75),
    "AhatOdd": (0.25, 0.5, 0.75),
    "C": (0.25, 0.5, 0.75, -1.5, -2.0, -3.0),
    "cNu": (0.25, 0.5, 0.75, 5.0, 20.0),
    "B": (None,),
}


def _cases():
    for fam, params in GRID.items():
        for p in params:
            for k in PRINTED[fam]:
                yield fam, p, k


@pytest.mark.parametrize("family,param,k", list(_cases()))
def test_generated_matches_printed(family, param, k):
    gen = generate_family(family, param, max(PRINTED[family]))[k]
    ref = closed_form(family, k, param)
    # C_2(-1.5) vanishes identically; compare absolutely there
    assert abs(gen - ref) <= 1e-10 * abs(ref) + 1e-30


def test_A_at_two():
    t = generate_family("A", 2, 8)
    assert t[0] == 1
    assert abs(t[2] - mpmath.mpf(5) / 12) < 1e-30
    # the quartic printed form at a = 2 gives 97/864
    assert abs(t[4] - mpmath.mpf(97) / 864) < 1e-30
    assert abs(closed_form("A", 4, 2) - mpmath.mpf(97) / 864) < 1e-30


def test_B_list():
    t = generate_family("B", None, 7)
    assert abs(t[0] - MU) < 1e-30
    assert abs(t[1] - mpmath.mpc(0, -6) / 5) < 1e-30
    assert abs(t[2] + 27 / (35 * MU)) < 1e-30
    assert abs(t[3] - 2 * MU / 25) < 1e-30
    assert abs(t[4] - mpmath.mpc(0, 1296) / 67375) < 1e-30


@pytest.mark.parametrize("k", [1, 4, 7, 10])
def test_B_pure_imaginary_pattern(k):
    b = generate_family("B", None, MAX_INDEX)[k]
    assert abs(b.real) <= 1e-25 * abs(b)


def test_C_and_cNu_examples():
    c = generate_family("C", 0.5, 6)
    assert c[0] == 1 and abs(c[1] - 2) < 1e-30 and abs(c[2] - mpmath.mpf(16) / 3) < 1e-30
    n = generate_family("cNu", 5, 8)
    assert [int(mpmath.nint(n[k].real)) for k in range(4)] == [1, 5, 27, 165]
    assert abs(generate_family("cNu", 1, 8)[4] - 45) < 1e-25


def test_closed_form_examples():
    assert abs(closed_form("AhatOdd", 1, 0.5) + mpmath.mpf(2) / 3) < 1e-30
    b0 = complex(closed_form("B", 0))
    assert b0.real == pytest.approx(1.249025, abs=1e-6) and b0.imag == pytest.approx(0.721125, abs=1e-6)
    assert closed_form("cNu", 0, 7) == 1
    with pytest.raises(ValueError):
        closed_form("A", 10, 2)
    with pytest.raises(ValueError):
        closed_form("AhatOdd", 2, 0.5)


@pytest.mark.parametrize("nu", [0.0, 1.0, 2.5, 7.0])
def test_cnu_generating_function(nu):
    K = 10
    t = generate_family("cNu", nu, K)
    with mpmath.workdps(40):
        lhs = [t[k] / mpmath.factorial(k) for k in range(K + 1)]
        # multiply by (1 - w^2) and compare with the Taylor series of exp(nu*atanh w)
        prod = [lhs[k] - (lhs[k - 2] if k >= 2 else 0) for k in range(K + 1)]
        ref = mpmath.taylor(lambda w: mpmath.exp(nu * mpmath.atanh(w)), 0, K)
    for p, r in zip(prod, ref):
        assert abs(p - r) <= 1e-20 * max(1, abs(r))


@pytest.mark.parametrize("a", [0.5, 1.5, 3.0, 10.0])
def test_C_at_negative_parameter_is_real(a):
    t = generate_family("C", -a, MAX_INDEX)
    for _, v in t.items():
        assert mpmath.isfinite(v.real) and abs(v.imag) <= 1e-30 * max(1, abs(v))


def test_b6_golden():
    g = json.loads(GOLDEN.read_text())
    b6 = generate_family("B", None, 7)[6]
    want = mpmath.mpc(g["value_re"], g["value_im"])
    assert abs(b6 - want) < 1e-28
    assert abs(b6 - g["resolved_numerator"] * MU / g["denominator"]) < 1e-30
    assert abs(b6 - g["rejected_numerator"] * MU / g["denominator"]) > 1e-6
    assert abs(closed_form("B", 6) - b6) < 1e-30
    assert abs(closed_form("B", 6, as_printed=True) - b6) > 1e-6


@pytest.mark.parametrize("family,param", [
    ("A", 0.5), ("A", 1.0), ("AhatEven", 1.0), ("AhatOdd", 1.5), ("AhatOdd", -0.5),
    ("C", 1.0), ("cNu", -1.0), ("A", None),
])
def test_domain_errors(family, param):
    with pytest.raises(DomainError):
        generate_family(family, param, 4)


def test_precision_budget():
    with pytest.raises(DomainError):
        generate_family("B", None, MAX_INDEX + 1)
    with pytest.raises(ValueError):
        generate_family("nope", 1.0, 2)


def test_values_are_real_where_promised():
    for fam, p in [("A", 2.0), ("AhatEven", 0.5), ("AhatOdd", 0.5), ("C", 0.5), ("cNu", 3.0)]:
        for _, v in generate_family(fam, p, 9 if fam == "AhatOdd" else 8).items():
            assert abs(v.imag) <= 1e-30 * max(1, abs(v))


def test_indexing_convention():
    assert list(CoefficientFamily.A.indices(8)) == [0, 2, 4, 6, 8]
    assert list(CoefficientFamily.AhatOdd.indices(9)) == [1, 3, 5, 7, 9]
    with pytest.raises(KeyError):
        generate_family("A", 2, 8)[3]
