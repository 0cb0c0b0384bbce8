"""Expansion coefficients generated by series reversion.

Each family is produced the same way the saddle-point expansions are
derived: expand the phase about the critical point, take the appropriate
root to define the new integration variable ``w``, revert, differentiate
and read off the normalised coefficients.  Results are memoised per
``(family, parameter, K, digits)``; tables are immutable, so concurrent
readers are safe and a duplicate concurrent fill is harmless.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .series import (
    DEFAULT_PRECISION,
    SeriesError,
    TruncatedSeries,
    context,
    series_exp,
    series_power,
    series_revert,
    series_sqrt,
    tan_taylor,
    taylor_phase,
)

MAX_INDEX = 12


class CoefficientFamily(str, enum.Enum):
    A = "A"
    AhatEven = "AhatEven"
    AhatOdd = "AhatOdd"
    B = "B"
    C = "C"
    cNu = "cNu"

    @property
    def step(self) -> int:
        return 2 if self in (CoefficientFamily.A, CoefficientFamily.AhatEven,
                             CoefficientFamily.AhatOdd) else 1

    @property
    def first(self) -> int:
        return 1 if self is CoefficientFamily.AhatOdd else 0

    def indices(self, K: int) -> range:
        return range(self.first, K + 1, self.step)


# index ranges of the printed lists; the evaluators use these by default
PRINTED_MAX = {
    CoefficientFamily.A: 8,
    CoefficientFamily.AhatEven: 8,
    CoefficientFamily.AhatOdd: 9,
    CoefficientFamily.B: 7,
    CoefficientFamily.C: 6,
    CoefficientFamily.cNu: 8,
}


class DomainError(ValueError):
    """Parameter outside the admissible domain of a coefficient family."""


@dataclass(frozen=True)
class CoefficientTable:
    family: CoefficientFamily
    parameter: float | None
    max_index: int
    values: tuple  # mpmath numbers, positional over family.indices(max_index)

    @property
    def indices(self) -> range:
        return self.family.indices(self.max_index)

    def __getitem__(self, index: int):
        idx = self.indices
        if index not in idx:
            raise KeyError(f"{self.family.value} has no index {index} (max {self.max_index})")
        return self.values[idx.index(index)]

    def get(self, index: int, default=None):
        try:
            return self[index]
        except KeyError:
            return default

    def items(self):
        return zip(self.indices, self.values)

    def real(self, index: int) -> float:
        return float(self[index].real)

    def complex(self, index: int) -> complex:
        return complex(self[index])


def _family(family) -> CoefficientFamily:
    try:
        return CoefficientFamily(getattr(family, "value", family))
    except ValueError:
        raise ValueError(f"unknown coefficient family {family!r}") from None


def check_domain(family, parameter):
    fam = _family(family)
    if fam is CoefficientFamily.B:
        return
    if parameter is None:
        raise DomainError(f"{fam.value} needs a parameter")
    p = float(parameter)
    if fam is CoefficientFamily.A and not p > 1:
        raise DomainError("family A requires a > 1")
    if fam is CoefficientFamily.AhatOdd and not 0 < p < 1:
        raise DomainError("family AhatOdd requires 0 < a < 1")
    if fam is CoefficientFamily.AhatEven and not (p < 1 and p != 0):
        raise DomainError("family AhatEven requires a < 1, a != 0")
    if fam is CoefficientFamily.C and p == 1:
        raise DomainError("family C requires a != 1")
    if fam is CoefficientFamily.cNu and p < 0:
        raise DomainError("family cNu requires nu >= 0")


def generate_family(family, parameter=None, K: int | None = None,
                    digits: int | None = None) -> CoefficientTable:
    """Coefficients of ``family`` at ``parameter`` up to family index ``K``."""
    fam = _family(family)
    K = PRINTED_MAX[fam] if K is None else int(K)
    if K < 0:
        raise ValueError("K must be non-negative")
    if K > MAX_INDEX:
        raise DomainError(f"K={K} exceeds the precision budget (max {MAX_INDEX})")
    check_domain(fam, parameter)
    digits = digits or DEFAULT_PRECISION.working_digits
    p = None if fam is CoefficientFamily.B else float(parameter)
    return _generate(fam, p, K, digits)


@lru_cache(maxsize=256)
def _generate(fam: CoefficientFamily, p, K: int, digits: int) -> CoefficientTable:
    ctx = context(digits)
    if fam is CoefficientFamily.A:
        d = _dudw_positive_saddle(p, K + 1, digits)
        norm = ctx.sqrt(ctx.mpc(0, 1) / p) * ctx.power(p - 1, ctx.mpf(-1) / 4)
        vals = [_real(d[2 * k] / (norm * ctx.mpc(0, 1) ** k)) for k in range(K // 2 + 1)]
    elif fam is CoefficientFamily.AhatEven and p < 0:
        d = _dydw_negative_saddle(-p, K + 1, digits)
        norm = ctx.power(1 - p, ctx.mpf(-1) / 4) / ctx.sqrt(-p)
        vals = [_real(d[2 * k] / norm) for k in range(K // 2 + 1)]
    elif fam in (CoefficientFamily.AhatEven, CoefficientFamily.AhatOdd):
        d = _dudw_positive_saddle(p, K + 1, digits)
        norm = ctx.power(1 - p, ctx.mpf(-1) / 4) / ctx.sqrt(p)
        if fam is CoefficientFamily.AhatEven:
            vals = [_real(d[2 * k] / norm) for k in range(K // 2 + 1)]
        else:
            # odd coefficients carry no prefactor: du/dw = norm * sum Ahat_2k w^2k
            #   + i * sum (-1)^k Ahat_{2k+1} w^{2k+1}
            j = ctx.mpc(0, 1)
            vals = [_real(d[2 * k + 1] / (j * (-1) ** k)) for k in range((K - 1) // 2 + 1)]
    elif fam is CoefficientFamily.B:
        d = _dudw_double_saddle(2 * K + 1, digits)
        vals = [d[2 * k] for k in range(K + 1)]
    elif fam is CoefficientFamily.C:
        d = _dydw_axis(p, 2 * K + 1, digits)
        vals = [_real(d[2 * k]) for k in range(K + 1)]
    elif fam is CoefficientFamily.cNu:
        g = _cnu_generating(p, K, digits)
        vals = [_real(g[k] * ctx.factorial(k)) for k in range(K + 1)]
    else:  # pragma: no cover
        raise AssertionError(fam)
    return CoefficientTable(fam, p, K, tuple(vals))


def _real(z):
    # the families are real by construction; drop the rounding-level residue
    return z.real if hasattr(z, "real") else z


def _saddle_inversion(P: TruncatedSeries) -> TruncatedSeries:
    """Given ``P(s) = psi - psi0`` with a double zero, return ``ds/dw``
    where ``-w**2 = P`` and ``w ~ sqrt(-P''(0)/2) s`` (principal root)."""
    ctx = P.ctx
    cs = list(P.coeffs)
    scale = max(abs(c) for c in cs[2:4])
    if abs(cs[1]) > ctx.mpf(10) ** (-P.digits + 6) * scale:
        raise SeriesError("expansion point is not a saddle")
    cs[1] = ctx.mpc(0)
    q = TruncatedSeries(tuple(cs), 0, P.digits).shift_down(2)
    w_of_s = series_sqrt(-q).shift_up(1)
    return series_revert(w_of_s).derivative()


def _dudw_positive_saddle(a: float, n: int, digits: int) -> TruncatedSeries:
    """du/dw through the saddle arctan(sqrt(a-1)) (real for a>1, imaginary for a<1)."""
    ctx = context(digits)
    a = ctx.mpf(a)
    if a > 1:
        u0 = ctx.atan(ctx.sqrt(a - 1))
    else:
        u0 = ctx.mpc(0, ctx.atanh(ctx.sqrt(1 - a)))
    psi = taylor_phase("pos-osc", a, u0, n + 3, digits)
    P = psi - psi[0]
    return _saddle_inversion(TruncatedSeries(P.coeffs, 0, digits))


def _dydw_negative_saddle(b: float, n: int, digits: int) -> TruncatedSeries:
    """dy/dw on the line u = pi/2 + i y through the saddle pi/2 + i beta."""
    ctx = context(digits)
    b = ctx.mpf(b)
    u0 = ctx.pi / 2 + ctx.mpc(0, ctx.atanh(1 / ctx.sqrt(1 + b)))
    psi = taylor_phase("neg", b, u0, n + 3, digits)
    j = ctx.mpc(0, 1)
    # u - u0 = i (y - beta)
    P = TruncatedSeries(tuple(c * j ** k for k, c in enumerate(psi.coeffs)), 0, digits)
    P = P - P[0]
    return _saddle_inversion(P)


def _dudw_double_saddle(n: int, digits: int) -> TruncatedSeries:
    """du/dw for -w**3 = psi(u) = i (tan u - u) about the origin."""
    ctx = context(digits)
    psi = taylor_phase("pos-coalesce", 1, 0, n + 4, digits)
    cs = list(psi.coeffs)
    cs[0] = cs[1] = cs[2] = ctx.mpc(0)
    q = TruncatedSeries(tuple(cs), 0, digits).shift_down(3)
    w_of_u = series_power(-q, 3).shift_up(1)
    return series_revert(w_of_u).derivative()


def _dydw_axis(a: float, n: int, digits: int) -> TruncatedSeries:
    """dy/dw for (a-1) w = a y - tanh y."""
    ctx = context(digits)
    a = ctx.mpf(a)
    th = tan_taylor(0, n + 1, digits, hyperbolic=True)
    f = [(-c) / (a - 1) for c in th]
    f[1] = f[1] + a / (a - 1)
    return series_revert(TruncatedSeries(tuple(f), 0, digits)).derivative()


def _cnu_generating(nu: float, K: int, digits: int) -> TruncatedSeries:
    """Taylor series of exp(nu * arctanh w) / (1 - w**2) to order K."""
    ctx = context(digits)
    at = [ctx.mpf(0)] * (K + 1)
    for m in range(1, K + 1, 2):
        at[m] = ctx.mpf(1) / m
    e = series_exp(TruncatedSeries(tuple(ctx.mpf(nu) * c for c in at), 0, digits))
    geo = TruncatedSeries(tuple(1 if m % 2 == 0 else 0 for m in range(K + 1)), 0, digits)
    return e * geo
