import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bateman_havelock.series import (
    PrecisionConfig,
    SeriesError,
    TruncatedSeries,
    series_arith,
    series_exp,
    series_inverse,
    series_revert,
    series_sqrt,
    tan_series_at_zero,
    taylor_phase,
)
from conftest import close_series

TOL = PrecisionConfig().tolerance
S = TruncatedSeries.from_coeffs


def test_difference_of_squares():
    p = series_arith(S([1, 1, 0]), S([1, -1, 0]), "mul")
    close_series(p, [1, 0, -1], TOL)


def test_derivative_of_tan_matches_one_plus_tan_squared():
    t = tan_series_at_zero(5)
    close_series(t, [0, 1, 0, mpmath.mpf(1) / 3, 0, mpmath.mpf(2) / 15], TOL)
    d = series_arith(t, None, "derivative")
    close_series(d, [1, 0, 1, 0, mpmath.mpf(2) / 3], TOL)
    one_plus_t2 = t * t + 1
    close_series(d, one_plus_t2.coeffs[:5], TOL)


def test_tan_arctan_compose_is_identity():
    t = tan_series_at_zero(5)
    at = S([0, 1, 0, -mpmath.mpf(1) / 3, 0, mpmath.mpf(1) / 5])
    close_series(series_arith(t, at, "compose"), [0, 1, 0, 0, 0, 0], TOL)


def test_revert_cubic():
    r = series_revert(S([0, 1, 0, 1, 0, 0, 0]))
    close_series(r, [0, 1, 0, -1, 0, 3, 0], TOL)


def test_revert_identity():
    close_series(series_revert(TruncatedSeries.identity(6)), [0, 1, 0, 0, 0, 0, 0], TOL)


def test_revert_tan_gives_arctan():
    # arctan coefficients by integrating 1/(1+u^2) term by term
    r = series_revert(tan_series_at_zero(9))
    want = [0] + [(-1) ** (n // 2) * mpmath.mpf(1) / n if n % 2 else 0 for n in range(1, 10)]
    close_series(r, want, TOL)


@pytest.mark.parametrize("bad", [[1, 1, 0], [0, 0, 1]])
def test_revert_rejects_inadmissible(bad):
    with pytest.raises(SeriesError):
        series_revert(S(bad))


def test_sqrt_examples():
    close_series(series_sqrt(S([1, 2, 0, 0])), [1, 1, -mpmath.mpf(1) / 2, mpmath.mpf(1) / 2], TOL)
    close_series(series_sqrt(S([4])), [2], TOL)
    close_series(series_sqrt(S([1, 2, 1, 0])), [1, 1, 0, 0], TOL)
    close_series(series_sqrt(S([1, 2, 1, 0]), "negated"), [-1, -1, 0, 0], TOL)
    with pytest.raises(SeriesError):
        series_sqrt(S([0, 1]))


def test_center_mismatch_is_an_error():
    with pytest.raises(SeriesError):
        S([1, 1], center=0) + S([1, 1], center=1)


def test_compose_needs_zero_constant():
    with pytest.raises(SeriesError):
        S([1, 1, 1]).compose(S([1, 1, 0]))


def test_results_truncate_to_shorter_operand():
    assert (S([1, 2, 3, 4]) * S([1, 1])).order == 1


def test_exp_and_inverse():
    e = series_exp(S([0, 1, 0, 0, 0]))
    close_series(e, [1 / mpmath.factorial(n) for n in range(5)], TOL)
    inv = series_inverse(S([1, -1, 0, 0]))
    close_series(inv, [1, 1, 1, 1], TOL)


def test_precision_config_validation():
    with pytest.raises(ValueError):
        PrecisionConfig(working_digits=20)
    with pytest.raises(ValueError):
        PrecisionConfig(eval_digits=10)
    assert PrecisionConfig(working_digits=50).tolerance == pytest.approx(1e-44)


coeff = st.floats(-1, 1, allow_nan=False, allow_infinity=False)


@settings(max_examples=25, deadline=None)
@given(st.lists(coeff, min_size=15, max_size=15), st.floats(0.1, 1.0))
def test_reversion_round_trip_order_16(tail, lead):
    s = S([0, lead] + tail)
    assert s.order == 16
    back = s.compose(series_revert(s))
    ident = TruncatedSeries.identity(16)
    # the coefficients of the inverse grow like lead**-n; compare relative to them
    scale = max(1, max(abs(c) for c in series_revert(s).coeffs))
    assert back.max_abs_diff(ident) <= TOL * scale


@settings(max_examples=15, deadline=None)
@given(st.lists(coeff, min_size=8, max_size=8), st.lists(coeff, min_size=7, max_size=7))
def test_derivative_of_composition(f, g_tail):
    fs = S(f)
    gs = S([0, 1] + g_tail[:6])
    lhs = fs.compose(gs).derivative()
    rhs = fs.derivative().compose(gs) * gs.derivative()
    assert lhs.max_abs_diff(rhs) <= TOL * 1e3


@settings(max_examples=15, deadline=None)
@given(st.lists(coeff, min_size=10, max_size=10), st.floats(0.2, 2.0))
def test_sqrt_squares_back(tail, c0):
    s = S([c0] + tail)
    r = series_sqrt(s)
    assert (r * r).max_abs_diff(s) <= TOL * 1e3


def test_double_saddle_phase():
    p = taylor_phase("pos-coalesce", 1, 0, 9)
    j = mpmath.mpc(0, 1)
    want = [0, 0, 0, j / 3, 0, 2 * j / 15, 0, 17 * j / 315, 0, 62 * j / 2835]
    close_series(p, want, TOL)


def test_phase_at_positive_saddle():
    p = taylor_phase("pos-osc", 2, mpmath.pi / 4, 5)
    assert abs(p[1]) <= TOL * abs(p[2])
    assert abs(p[2] - 2j) < 1e-30
    assert abs(p[3] - mpmath.mpc(0, 8) / 3) < 1e-30


def test_phase_at_negative_argument_saddle():
    a = mpmath.mpf("1.5")
    beta = mpmath.atanh(1 / mpmath.sqrt(1 + a))
    p = taylor_phase("neg", a, mpmath.pi / 2 + 1j * beta, 4)
    assert abs(p[1]) <= TOL * abs(p[2])
    assert abs(p[2] - a * mpmath.sqrt(1 + a)) < 1e-30
    assert float(p[2].real) == pytest.approx(2.371708, abs=1e-6)


def test_phase_rejects_pole():
    with pytest.raises(SeriesError):
        taylor_phase("pos-osc", 2, mpmath.pi / 2, 5)
