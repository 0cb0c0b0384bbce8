"""Scalar special functions needed by the expansions."""

from __future__ import annotations

import math
import warnings

from .series import context

# Maclaurin pair below this |z|, asymptotic forms above it.  At |z| = 12 the
# asymptotic series reaches ~1e-24 before diverging; the Maclaurin sums are
# done with enough guard digits to absorb their cancellation.
AIRY_SWITCH = 12.0
AIRY_UNDERFLOW = 110.0


def airy_ai(z: float) -> float:
    """Airy function of the first kind for real ``z`` with ``|z| <= 1000``."""
    z = float(z)
    if abs(z) > 1e3:
        raise ValueError("airy_ai is only provided for |z| <= 1000")
    if z > AIRY_UNDERFLOW:
        warnings.warn(f"Ai({z}) underflows double precision; returning 0", RuntimeWarning,
                      stacklevel=2)
        return 0.0
    if abs(z) <= AIRY_SWITCH:
        return _airy_maclaurin(z)
    return _airy_asymptotic(z)


def _airy_maclaurin(z: float) -> float:
    zeta = 2.0 / 3.0 * abs(z) ** 1.5
    # the two series grow like exp(zeta) while Ai(z) ~ exp(-zeta) for z > 0
    guard = int(2 * zeta / math.log(10)) + 1 if z > 0 else 0
    ctx = context(30 + guard)
    zz = ctx.mpf(z)
    z3 = zz ** 3
    c1 = ctx.power(3, ctx.mpf(-2) / 3) / ctx.gamma(ctx.mpf(2) / 3)
    c2 = ctx.power(3, ctx.mpf(-1) / 3) / ctx.gamma(ctx.mpf(1) / 3)
    f = t = ctx.mpf(1)
    g = s = zz
    eps = ctx.mpf(10) ** (-(30 + guard))
    k = 0
    while True:
        t = t * z3 / ((3 * k + 2) * (3 * k + 3))
        s = s * z3 / ((3 * k + 3) * (3 * k + 4))
        f += t
        g += s
        k += 1
        if abs(t) <= eps * abs(f) and abs(s) <= eps * (abs(g) + 1):
            break
    return float(c1 * f - c2 * g)


def _airy_u(kmax: int) -> list[float]:
    u = [1.0]
    for k in range(1, kmax + 1):
        u.append(u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k))
    return u


def _airy_asymptotic(z: float) -> float:
    x = abs(z)
    zeta = 2.0 / 3.0 * x ** 1.5
    u = _airy_u(60)
    if z > 0:
        acc, term, k = 0.0, 1.0, 0
        while k < 60:
            term = (-1) ** k * u[k] / zeta ** k
            if k > 0 and abs(term) > abs(prev):
                break
            acc += term
            prev = term
            if abs(term) < 1e-17 * abs(acc):
                break
            k += 1
        return math.exp(-zeta) / (2.0 * math.sqrt(math.pi) * x ** 0.25) * acc
    p = q = 0.0
    for k in range(30):
        tp = (-1) ** k * u[2 * k] / zeta ** (2 * k)
        tq = (-1) ** k * u[2 * k + 1] / zeta ** (2 * k + 1)
        p += tp
        q += tq
        if abs(tp) < 1e-17 and abs(tq) < 1e-17:
            break
    ph = zeta - math.pi / 4
    return (math.cos(ph) * p + math.sin(ph) * q) / (math.sqrt(math.pi) * x ** 0.25)


def lower_gamma_int(n: int, z: float) -> float:
    """Lower incomplete gamma ``gamma(n + 1, z)`` for integer ``n >= 0``.

    Equal to ``n! (1 - exp(-z) sum_{m<=n} z**m / m!)``.  For ``z`` below
    ``n + 1`` the complement is summed directly (all terms positive) to
    avoid cancellation.
    """
    if n < 0 or z < 0:
        raise ValueError("lower_gamma_int needs n >= 0 and z >= 0")
    if z == 0:
        return 0.0
    fact = math.factorial(n)
    if z < n + 1:
        # exp(-z) * sum_{m > n} z^m / m!, scaled by n!
        term = z ** (n + 1) / (n + 1)  # z^{n+1} n! / (n+1)!
        total = 0.0
        m = n + 1
        while True:
            total += term
            m += 1
            term *= z / m
            if term < 1e-17 * total:
                break
        return math.exp(-z) * total
    partial, term = 0.0, 1.0
    for m in range(n + 1):
        if m:
            term *= z / m
        partial += term
    return fact * -math.expm1(math.log(partial) - z) if partial > 0 else float(fact)


def sin_half_pi(nu: float) -> float:
    """``sin(pi nu / 2)`` with exact zeros at even integers."""
    r = math.fmod(nu, 4.0)
    if r < 0:
        r += 4.0
    if r in (0.0, 2.0):
        return 0.0
    if r == 1.0:
        return 1.0
    if r == 3.0:
        return -1.0
    return math.sin(math.pi * r / 2)


def cos_half_pi(nu: float) -> float:
    """``cos(pi nu / 2)`` with exact zeros at odd integers."""
    return sin_half_pi(nu + 1.0)


def half_pochhammer(start: float, k: int) -> float:
    """Rising factorial ``(start)_k``."""
    out = 1.0
    for j in range(k):
        out *= start + j
    return out
