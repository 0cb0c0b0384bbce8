"""Truncated power-series arithmetic in extended precision.

Every coefficient family used by the asymptotic expansions is produced by
manipulating finite Taylor expansions: expanding a phase function about a
saddle, taking a square (or cube) root, reverting the result and
differentiating.  All arithmetic is done with an ``mpmath`` context of
fixed precision so that cancellation in high-order reversion does not
destroy the coefficients.

A :class:`TruncatedSeries` is immutable.  Each precision gets its own
``mpmath.MPContext`` instance which is never mutated after creation, so the
functions here are safe to call from several threads at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath

DEFAULT_ORDER = 24


@dataclass(frozen=True)
class PrecisionConfig:
    """Digits used for coefficient generation and expansion evaluation."""

    working_digits: int = 40
    eval_digits: int = 15

    def __post_init__(self):
        if self.eval_digits < 15:
            raise ValueError("eval_digits must be >= 15")
        if self.working_digits < 30 or self.working_digits < self.eval_digits:
            raise ValueError("working_digits must be >= max(30, eval_digits)")

    @property
    def tolerance(self) -> float:
        """Coefficient-wise tolerance promised by the series invariants."""
        return 10.0 ** (-self.working_digits + 6)


DEFAULT_PRECISION = PrecisionConfig()


@lru_cache(maxsize=None)
def context(digits: int) -> mpmath.ctx_mp.MPContext:
    """Return a private mpmath context working with ``digits`` decimal digits."""
    ctx = mpmath.MPContext()
    ctx.dps = digits
    return ctx


class SeriesError(ValueError):
    """Raised for an operation that is undefined on the given series."""


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Taylor expansion ``sum_n coeffs[n] * (u - center)**n`` to order ``N``.

    Coefficients beyond ``order`` are unknown, not zero; binary operations
    truncate to the smaller operand order.
    """

    coeffs: tuple
    center: complex = 0
    digits: int = DEFAULT_PRECISION.working_digits

    def __post_init__(self):
        ctx = context(self.digits)
        cs = tuple(ctx.mpc(c) for c in self.coeffs)
        if not cs:
            raise SeriesError("a series needs at least one coefficient")
        for c in cs:
            if not (ctx.isfinite(c.real) and ctx.isfinite(c.imag)):
                raise SeriesError("non-finite series coefficient")
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "center", ctx.mpc(self.center))

    # construction helpers -------------------------------------------------
    @classmethod
    def from_coeffs(cls, coeffs: Iterable, center=0, digits=None):
        return cls(tuple(coeffs), center, digits or DEFAULT_PRECISION.working_digits)

    @classmethod
    def identity(cls, order: int, center=0, digits=None):
        """The series of the variable itself, ``w`` (zero constant term)."""
        return cls.from_coeffs([0, 1] + [0] * (order - 1), center, digits)

    def _new(self, coeffs, center=None):
        return TruncatedSeries(tuple(coeffs), self.center if center is None else center, self.digits)

    @property
    def ctx(self):
        return context(self.digits)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __repr__(self):
        body = ", ".join(mpmath.nstr(c, 8) for c in self.coeffs)
        return f"TruncatedSeries([{body}], center={mpmath.nstr(self.center, 8)})"

    def to_complex(self) -> list[complex]:
        return [complex(c) for c in self.coeffs]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise SeriesError(f"cannot extend a series of order {self.order} to {order}")
        return self._new(self.coeffs[: order + 1])

    def max_abs_diff(self, other: "TruncatedSeries") -> mpmath.mpf:
        n = min(self.order, other.order)
        return max(abs(self.coeffs[i] - other.coeffs[i]) for i in range(n + 1))

    def __call__(self, w):
        """Evaluate the truncated polynomial at offset ``w`` from the center."""
        acc = self.ctx.mpc(0)
        for c in reversed(self.coeffs):
            acc = acc * w + c
        return acc

    # arithmetic -------------------------------------------------------------
    def _check_center(self, other: "TruncatedSeries"):
        if abs(self.center - other.center) > self.ctx.mpf(10) ** (-self.digits + 4):
            raise SeriesError("series expanded about different centers")

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check_center(other)
            n = min(self.order, other.order)
            return self._new(self.coeffs[i] + other.coeffs[i] for i in range(n + 1))
        cs = list(self.coeffs)
        cs[0] += other
        return self._new(cs)

    __radd__ = __add__

    def __neg__(self):
        return self._new(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self._new(c * other for c in self.coeffs)
        self._check_center(other)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        zero = self.ctx.mpc(0)
        out = []
        for k in range(n + 1):
            acc = zero
            for j in range(k + 1):
                acc += a[j] * b[k - j]
            out.append(acc)
        return self._new(out)

    __rmul__ = __mul__

    def derivative(self) -> "TruncatedSeries":
        if self.order == 0:
            return self._new([0])
        return self._new(n * self.coeffs[n] for n in range(1, self.order + 1))

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """``self(inner(w))``; ``inner`` must have zero constant term."""
        if abs(inner.coeffs[0]) != 0:
            raise SeriesError("composition requires the inner series to vanish at its center")
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        acc = self._new([self.coeffs[n]] + [0] * n, center=inner.center)
        for c in reversed(self.coeffs[:n]):
            acc = acc * inner + c
        return acc

    def shift_down(self, k: int) -> "TruncatedSeries":
        """Divide by ``w**k`` when the first ``k`` coefficients vanish."""
        tol = self.ctx.mpf(10) ** (-self.digits + 6)
        scale = max(abs(c) for c in self.coeffs) or 1
        if any(abs(c) > tol * scale for c in self.coeffs[:k]):
            raise SeriesError(f"leading {k} coefficients are not zero")
        return self._new(self.coeffs[k:])

    def shift_up(self, k: int) -> "TruncatedSeries":
        """Multiply by ``w**k`` (order grows by ``k``)."""
        return self._new([0] * k + list(self.coeffs))


def series_arith(lhs: TruncatedSeries, rhs, kind: str) -> TruncatedSeries:
    """Functional front end for the binary and unary series operations."""
    if kind == "add":
        return lhs + rhs
    if kind == "sub":
        return lhs - rhs
    if kind == "mul":
        return lhs * rhs
    if kind == "scale":
        if isinstance(rhs, TruncatedSeries):
            raise SeriesError("scale expects a scalar")
        return lhs * rhs
    if kind == "compose":
        return lhs.compose(rhs)
    if kind == "derivative":
        return lhs.derivative()
    raise ValueError(f"unknown series operation {kind!r}")


def series_revert(s: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse ``t`` with ``s(t(w)) = w`` to order ``N``.

    Triangular recurrence: the coefficient of ``w**n`` in ``s(t(w))`` is
    ``s_1 t_n`` plus terms involving only ``t_1 .. t_{n-1}``, so the ``t_n``
    are solved one at a time.  ``powers[k][m]`` caches ``[w**m] t(w)**k``.
    """
    ctx = s.ctx
    N = s.order
    if abs(s.coeffs[0]) != 0:
        raise SeriesError("reversion needs a vanishing constant term")
    if N < 1 or abs(s.coeffs[1]) == 0:
        raise SeriesError("reversion needs a nonzero linear coefficient")
    sc = s.coeffs
    zero = ctx.mpc(0)
    t = [zero] * (N + 1)
    t[1] = 1 / sc[1]
    powers = [[zero] * (N + 1) for _ in range(N + 1)]
    powers[1][1] = t[1]
    for k in range(2, N + 1):
        powers[k][k] = t[1] ** k
    for n in range(2, N + 1):
        acc = zero
        for k in range(2, n + 1):
            if k < n:
                pk = zero
                prev = powers[k - 1]
                for j in range(1, n - k + 2):
                    pk += t[j] * prev[n - j]
                powers[k][n] = pk
            acc += sc[k] * powers[k][n]
        t[n] = -acc / sc[1]
        powers[1][n] = t[n]
    return TruncatedSeries(tuple(t), 0, s.digits)


def series_sqrt(s: TruncatedSeries, branch: str = "principal") -> TruncatedSeries:
    """Square root with ``r * r = s``; ``branch`` picks the sign of ``r[0]``."""
    return series_power(s, 2, branch)


def series_power(s: TruncatedSeries, root: int, branch: str = "principal") -> TruncatedSeries:
    """``s ** (1/root)`` for a series with nonzero constant term.

    Uses the J.C.P. Miller recurrence for powers of a power series.  The
    constant term is the principal root of ``s[0]``, negated for
    ``branch="negated"``.
    """
    ctx = s.ctx
    if abs(s.coeffs[0]) == 0:
        raise SeriesError("root of a series with zero constant term")
    if branch not in ("principal", "negated"):
        raise ValueError(f"unknown branch {branch!r}")
    alpha = ctx.mpf(1) / root
    c = s.coeffs
    r0 = ctx.root(c[0], root) if root != 2 else ctx.sqrt(c[0])
    if branch == "negated":
        r0 = -r0
    r = [r0]
    for n in range(1, s.order + 1):
        acc = ctx.mpc(0)
        for k in range(1, n + 1):
            acc += ((alpha + 1) * k - n) * c[k] * r[n - k]
        r.append(acc / (n * c[0]))
    return s._new(r)


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    ctx = s.ctx
    c = s.coeffs
    e = [ctx.exp(c[0])]
    for n in range(1, s.order + 1):
        acc = ctx.mpc(0)
        for k in range(1, n + 1):
            acc += k * c[k] * e[n - k]
        e.append(acc / n)
    return s._new(e)


def series_inverse(s: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse ``1/s`` (requires ``s[0] != 0``)."""
    c = s.coeffs
    if abs(c[0]) == 0:
        raise SeriesError("reciprocal of a series with zero constant term")
    inv = [1 / c[0]]
    for n in range(1, s.order + 1):
        acc = s.ctx.mpc(0)
        for k in range(1, n + 1):
            acc += c[k] * inv[n - k]
        inv.append(-acc / c[0])
    return s._new(inv)


def tan_taylor(center, order: int, digits: int, hyperbolic: bool = False) -> list:
    """Taylor coefficients of ``tan`` (or ``tanh``) about ``center``.

    From ``t' = 1 + t**2`` (``h' = 1 - h**2``): with ``t = sum t_n e**n``,
    ``(n+1) t_{n+1} = [n == 0] +/- sum_{j} t_j t_{n-j}``.
    """
    ctx = context(digits)
    sign = -1 if hyperbolic else 1
    t = [ctx.tanh(center) if hyperbolic else ctx.tan(center)]
    for n in range(order):
        conv = ctx.fsum(t[j] * t[n - j] for j in range(n + 1))
        t.append(((1 if n == 0 else 0) + sign * conv) / (n + 1))
    return t


# Regime tags accepted by taylor_phase; see asymptotics.Regime for the full type.
_POS = ("pos-osc", "pos-mono", "pos-coalesce", "PosOsc", "PosMono", "PosCoalesce")
_NEG = ("neg", "NegArg")


def taylor_phase(regime, a, center, N: int, digits: int | None = None,
                 pole_tol: float = 1e-8) -> TruncatedSeries:
    """Taylor series of ``psi(u) = i (tan u -/+ a u)`` about ``center``.

    The minus sign applies for positive argument, the plus sign for the
    negative-argument regime.  ``regime`` may be a :class:`Regime` or its
    tag string.
    """
    digits = digits or DEFAULT_PRECISION.working_digits
    if N < 3:
        raise ValueError("phase expansion needs N >= 3")
    tag = getattr(regime, "value", regime)
    if tag in _POS:
        sign = -1
    elif tag in _NEG:
        sign = 1
    else:
        raise ValueError(f"unknown regime {regime!r}")
    ctx = context(digits)
    c = ctx.mpc(center)
    # tan has poles at pi/2 + m pi on the real line only
    m = ctx.nint((c.real - ctx.pi / 2) / ctx.pi)
    if abs(c - (ctx.pi / 2 + m * ctx.pi)) < pole_tol:
        raise SeriesError(f"expansion point {complex(c)} sits on a pole of tan")
    t = tan_taylor(c, N, digits)
    a = ctx.mpf(a)
    t[0] = t[0] + sign * a * c
    t[1] = t[1] + sign * a
    j = ctx.mpc(0, 1)
    return TruncatedSeries(tuple(j * x for x in t), c, digits)


def tan_series_at_zero(order: int, digits: int | None = None) -> TruncatedSeries:
    digits = digits or DEFAULT_PRECISION.working_digits
    return TruncatedSeries(tuple(tan_taylor(0, order, digits)), 0, digits)


def from_values(values: Sequence, digits: int | None = None) -> TruncatedSeries:
    return TruncatedSeries.from_coeffs(values, 0, digits)
