"""Printed closed forms of the expansion coefficients.

These are the explicit rational/algebraic expressions for the low-order
coefficients.  They serve as an independent check of the coefficients that
:mod:`bateman_havelock.coefficients` produces by series reversion, and are
never used by the evaluators themselves.

Two printed entries contain obvious misprints; the corrected forms are used
here and the literal printed forms are kept alongside for reference:

* ``c_7(nu)`` is printed with ``2464*nu`` where ``2464*nu**2`` is meant
  (the polynomial is otherwise even in ``nu`` after the ``nu`` factor).
* ``B_6`` appears with numerator 49711 in the coefficient list and 49771 in
  the explicit expansion of ``k_nu(nu)``; the list value is the one
  reproduced by reversion.
"""

from __future__ import annotations

from .series import DEFAULT_PRECISION, context

PRINTED = {
    "A": (0, 2, 4, 6, 8),
    "AhatEven": (0, 2, 4, 6, 8),
    "AhatOdd": (1, 3, 5, 7, 9),
    "B": tuple(range(8)),
    "C": tuple(range(7)),
    "cNu": tuple(range(9)),
}


def _poly(ctx, coeffs, a):
    acc = ctx.mpf(0)
    for c in reversed(coeffs):
        acc = acc * a + c
    return acc


# numerators of A_{2k}(a), lowest power of a first
_A_NUM = {
    2: (8, -12, 9),
    4: (64, -192, 288, 360, -135),
    6: (-71168, 320256, -554688, 518400, 340200, -170100, 42525),
    8: (-2338816, 14032896, -36790272, 55710720, -32876928, 231880320,
        -68584320, 30618000, -5740875),
}
_A_DEN = {2: 24, 4: 3456, 6: 6220800, 8: 4180377600}

_AHAT_ODD_NUM = {
    1: (-2, 3),
    3: (-16, 36),
    5: (32, -120, 144, 189),
    7: (128, -672, 1440, -1656, 2160),
    9: (-35968, 242784, -692064, 1077948, -1020600, 1403325, 400950),
}
_AHAT_ODD_DEN = {1: 3, 3: 135, 5: 2835, 7: 25515, 9: 37889775}

_C_NUM = {
    0: (1,),
    1: (1,),
    2: (3, 2),
    3: (45, 78, 17),
    4: (315, 972, 576, 62),
    5: (14175, 66060, 71982, 21576, 1382),
    6: (467775, 3001590, 5063616, 2842542, 514533, 21844),
}

# c_k(nu) as polynomials in nu, lowest power first
_CNU = {
    0: (1,),
    1: (0, 1),
    2: (2, 0, 1),
    3: (0, 8, 0, 1),
    4: (24, 0, 20, 0, 1),
    5: (0, 184, 0, 40, 0, 1),
    6: (720, 0, 784, 0, 70, 0, 1),
    7: (0, 8448, 0, 2464, 0, 112, 0, 1),
    8: (40320, 0, 52352, 0, 6384, 0, 168, 0, 1),
}
# the literal printed c_7: nu * (8448 + 2464 nu + 112 nu^4 + nu^6)
_CNU7_AS_PRINTED = (0, 8448, 2464, 0, 0, 112, 0, 1)


def _check(family, k):
    if family not in PRINTED:
        raise ValueError(f"unknown coefficient family {family!r}")
    if k not in PRINTED[family]:
        raise ValueError(f"no printed closed form for {family} index {k}")


def closed_form(family: str, k: int, parameter=None, digits: int | None = None,
                as_printed: bool = False):
    """Evaluate the printed expression for coefficient ``k`` of ``family``.

    ``parameter`` is ``a`` for the A/Ahat/C families and ``nu`` for ``cNu``;
    B needs none.  ``AhatEven`` and ``C`` accept negative ``a`` (formal
    substitution, as needed for negative argument).  Returns an mpmath
    number at ``digits`` precision.
    """
    _check(family, k)
    ctx = context(digits or DEFAULT_PRECISION.working_digits)
    if family == "B":
        return _b_closed(ctx, k, as_printed)
    p = ctx.mpf(parameter)
    if family == "cNu":
        coeffs = _CNU7_AS_PRINTED if (as_printed and k == 7) else _CNU[k]
        return _poly(ctx, coeffs, p)
    if family == "C":
        return _poly(ctx, _C_NUM[k], p) / (_poly(ctx, _C_NUM[k], 0) * (1 - p) ** k)
    a = p
    if family == "A":
        if k == 0:
            return ctx.mpf(1)
        m = k // 2
        return _poly(ctx, _A_NUM[k], a) / (_A_DEN[k] * a ** m * ctx.power(a - 1, ctx.mpf(3 * m) / 2))
    if family == "AhatEven":
        if k == 0:
            return ctx.mpf(1)
        m = k // 2
        # printed: Ahat_2 and Ahat_6 carry an overall minus sign relative to A
        sign = -1 if m % 2 else 1
        return sign * _poly(ctx, _A_NUM[k], a) / (_A_DEN[k] * a ** m * _pow_1ma(ctx, a, ctx.mpf(3 * m) / 2))
    if family == "AhatOdd":
        m = (k - 1) // 2
        return _poly(ctx, _AHAT_ODD_NUM[k], a) / (
            _AHAT_ODD_DEN[k] * a ** (m + 1) * _pow_1ma(ctx, a, ctx.mpf(3 * m + 2) / 2))
    raise AssertionError(family)


def _pow_1ma(ctx, a, e):
    return ctx.power(1 - a, e)


def _b_closed(ctx, k, as_printed):
    mu = ctx.cbrt(3) * ctx.expjpi(ctx.mpf(1) / 6)
    j = ctx.mpc(0, 1)
    table = {
        0: mu,
        1: -6 * j / 5,
        2: -ctx.mpf(27) / (35 * mu),
        3: 2 * mu / 25,
        4: 1296 * j / 67375,
        5: ctx.mpf(9774) / (284375 * mu),
        6: -(49771 if as_printed else 49711) * mu / ctx.mpf(11790625),
        7: -3390336 * j / ctx.mpf(1861234375),
    }
    return table[k]
