"""Independent quadrature values of k_nu(x) and h_nu(x).

Three routes:

* ``direct``: the defining integral after ``t = tan u``, summed panel by
  panel between zeros of the integrand with Wynn acceleration of the
  alternating tail (|x| <= 30).
* ``contour``: the integral moved onto steepest-descent paths, where the
  integrand is non-oscillatory and decays like exp(-x w**2).
* ``u_integral``: for k_nu(-x), the Laplace integral of the confluent
  hypergeometric function U(nu/2, 0, 2x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .contours import (
    CertificationError,
    PathTracingError,
    certify_branch,
    descent_offsets,
    neg_heights,
    saddle,
)
from .quadrature import gauss_legendre, tanh_sinh, tanh_sinh_segments, wynn_epsilon
from .regimes import Regime
from .special import cos_half_pi, sin_half_pi

DIRECT_MAX_X = 30.0
CONTOUR_MIN_X = 5.0
MAX_ZEROS = 10_000
_CUT = 75.0  # legs stop where the exponent has dropped by this much (e**-75 ~ 3e-33)


class OracleError(RuntimeError):
    """An oracle is inapplicable or missed its accuracy target."""


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_err_estimate: float
    n_evals: int
    method: str
    meta: dict = field(default_factory=dict, compare=False)


def _which(which: str) -> str:
    w = str(which).lower()
    if w in ("k", "bateman"):
        return "k"
    if w in ("h", "havelock"):
        return "h"
    raise ValueError(f"unknown function {which!r} (bateman|havelock)")


def _check_point(x, nu):
    if not math.isfinite(x) or x == 0:
        raise ValueError("x must be finite and nonzero")
    if not math.isfinite(nu) or nu < 0:
        raise ValueError("nu must be finite and nonnegative")


# ---------------------------------------------------------------- direct

def oracle_direct(x: float, nu: float, which: str = "bateman", tol: float = 1e-12,
                  level: int = 6, gl_points: int = 20) -> QuadratureResult:
    """(2/pi) int_0^inf trig(x t - nu arctan t) / (1 + t**2) dt."""
    w = _which(which)
    _check_point(x, nu)
    X = abs(x)
    if X > DIRECT_MAX_X:
        raise OracleError(f"|x| = {X} exceeds the oscillation budget ({DIRECT_MAX_X})")
    if w == "k" and x < 0 and nu > 0 and sin_half_pi(nu) == 0.0:
        return QuadratureResult(0.0, 0.0, 0, "direct")
    snu = -nu if x > 0 else nu
    cosine = w == "k"
    off = 0.5 if cosine else 0.0
    sgn = -1.0 if (w == "h" and x < 0) else 1.0

    def theta(t):
        return X * t + snu * np.arctan(t)

    def f(t):
        th = theta(t)
        return (np.cos(th) if cosine else np.sin(th)) / (1.0 + t * t)

    # theta is monotone beyond t_mono; the head [0, T0] is split so that
    # each piece spans at most ~pi of phase
    t_mono = math.sqrt(max(0.0, nu / X - 1.0)) if snu < 0 else 0.0
    th_m = float(theta(np.array(t_mono)))
    m0 = math.floor(th_m / math.pi - off) + 1
    gx, gw = gauss_legendre(gl_points)
    z0, _ = kernels.oscillatory_panels(X, snu, off, m0, 0, gx, gw)
    T0 = float(z0[0])
    grid = np.linspace(0.0, t_mono, 2 + int(abs(th_m) / math.pi)) if t_mono > 0 else np.array([0.0])
    tail = np.linspace(t_mono, T0, 2 + int(abs(float(theta(np.array(T0))) - th_m) / math.pi))
    breaks = np.unique(np.concatenate([grid, tail]))
    head = tanh_sinh_segments(f, breaks, level)
    n_evals = head.n_evals

    partial = []
    acc = 0.0
    npan = 64
    start = m0
    best = err = float("inf")
    while True:
        _, vals = kernels.oscillatory_panels(X, snu, off, start, npan, gx, gw)
        n_evals += npan * gl_points
        for v in vals:
            acc += v
            partial.append(acc)
        start += npan
        est, d = wynn_epsilon(partial[-min(len(partial), 40):])
        if abs(est - best) <= max(tol * 0.1, 1e-16 * abs(head.value)) and d <= tol:
            best, err = est, max(d, abs(est - best))
            break
        best, err = est, d
        if len(partial) >= MAX_ZEROS:
            raise OracleError(f"tail did not converge within {MAX_ZEROS} zeros (est. err {err:.2e})")
        npan = min(2 * npan, MAX_ZEROS - len(partial))
    value = sgn * 2.0 / math.pi * (head.value + best)
    abs_err = 2.0 / math.pi * (head.error + err)
    if abs_err > tol:
        raise OracleError(f"direct quadrature error {abs_err:.2e} above tolerance {tol:.0e}")
    return QuadratureResult(float(value), float(abs_err), n_evals, "direct")


# ---------------------------------------------------------------- contour

def _branch_integral(sd, x, sign, level):
    """int_0^W exp(-x w**m) du/dw dw along one half path, with certification."""
    W = (_CUT / x) ** (1.0 / sd.m)
    store = {}

    def f(w):
        h, du = descent_offsets(sd, w, sign)
        store["h"], store["w"] = h, w
        return np.exp(-x * w ** sd.m) * du

    q = tanh_sinh(f, 0.0, W, level)
    certify_branch(sd, store["h"], store["w"])
    return q


def _laplace_segments(g, breaks, level):
    return tanh_sinh_segments(lambda y: np.exp(-g(y)), breaks, level)


def oracle_contour(x: float, nu: float, which: str = "bateman", rtol: float = 1e-13,
                   level: int = 7, height: float | None = None) -> QuadratureResult:
    """Integrate along certified steepest-descent paths.

    With ``F = int_0^{pi/2} exp(x psi) du`` for x > 0, ``k = (2/pi) Re F``
    and ``h = (2/pi) Im F``.  For x < 0 the paths are the imaginary axis
    and the line Re u = pi/2 through the saddle pi/2 + i beta.
    """
    w = _which(which)
    _check_point(x, nu)
    X = abs(x)
    a = nu / X
    if X < CONTOUR_MIN_X:
        raise OracleError(f"contour oracle needs |x| >= {CONTOUR_MIN_X}")
    if not a > 0:
        raise OracleError("contour oracle needs nu > 0")
    try:
        if x < 0:
            val, err, n = _contour_negative(X, a, nu, w, level, height)
        else:
            val, err, n = _contour_positive(x, a, w, level)
    except (PathTracingError, CertificationError) as e:
        raise OracleError(f"contour path rejected: {e}") from e
    if err > rtol * abs(val) and err > 1e-300:
        raise OracleError(f"contour error estimate {err:.2e} exceeds {rtol:.0e} relative "
                          f"(value {val:.6e})")
    return QuadratureResult(float(val), float(err), n, "contour")


def _contour_positive(x, a, w, level):
    n = 0
    if a == 1.0:
        sd = saddle(Regime.PosCoalesce, 1.0)
        q = _branch_integral(sd, x, 1, level)
        F, err, n = q.value, q.error, q.n_evals
    elif a > 1:
        sd = saddle(Regime.PosOsc, a)
        d = _branch_integral(sd, x, 1, level)
        c = _branch_integral(sd, x, -1, level)
        # axis leg u = -i y: exp(x psi) = exp(-x (a y - tanh y))
        Y = _CUT / (x * (a - 1.0))
        g = lambda y: x * (a * y - np.tanh(y))  # noqa: E731
        ax = _laplace_segments(g, _breaks(Y), level)
        e0 = np.exp(x * sd.psi0)
        F = -1j * ax.value + e0 * (d.value - c.value)
        # the axis leg is purely imaginary and does not affect Re F
        err = abs(e0) * (d.error + c.error) + (ax.error if w == "h" else 0.0)
        n = d.n_evals + c.n_evals + ax.n_evals
    else:
        sd = saddle(Regime.PosMono, a)
        b = _branch_integral(sd, x, 1, level)
        y0 = sd.u0.imag
        g = lambda y: x * (np.tanh(y) - a * y)  # noqa: E731
        ax = _laplace_segments(g, _breaks(y0), level)
        e0 = math.exp(x * sd.psi0.real)
        F = 1j * ax.value + e0 * b.value
        err = e0 * b.error + (ax.error if w == "h" else 0.0)
        n = b.n_evals + ax.n_evals
    val = 2.0 / math.pi * (F.real if w == "k" else F.imag)
    return val, 2.0 / math.pi * err, n


def _breaks(Y):
    return [0.0, Y] if Y <= 1.0 else [0.0, 1.0, Y]


def _contour_negative(X, a, nu, w, level, height):
    beta = math.atanh(1.0 / math.sqrt(1.0 + a))
    om = math.sqrt(1.0 + a) + a * beta
    y_lo, y_hi, ax_max = neg_heights(a, X, height)
    # vertical line: exp(x psi) = exp(-X (coth y + a y)) exp(i pi nu / 2)
    g = lambda y: X * (1.0 / np.tanh(y) + a * y - om)  # noqa: E731
    V = _laplace_segments(g, [y_lo, beta, y_hi], level)
    scale = math.exp(-X * om)
    n = V.n_evals
    if w == "k":
        s = sin_half_pi(nu)
        val = 2.0 / math.pi * s * scale * V.value
        err = 2.0 / math.pi * abs(s) * scale * V.error
        return val, err, n
    A = _laplace_segments(lambda y: X * (np.tanh(y) + a * y), _breaks(ax_max), level)
    c = cos_half_pi(nu)
    val = -2.0 / math.pi * (A.value - c * scale * V.value)
    err = 2.0 / math.pi * (A.error + abs(c) * scale * V.error)
    return val, err, n + A.n_evals


# ---------------------------------------------------------------- U integral

def oracle_U_negative(x: float, nu: float, level: int = 7) -> QuadratureResult:
    """k_nu(-x), x > 0, from e**-x sin(pi nu/2) / pi * int e**(-2xt) t**(al-1) (1+t)**(-al-1) dt.

    ``al = nu / 2``.  At ``nu = 0`` the limit exp(-x) is returned; for other
    even integers the value is exactly zero.
    """
    x = abs(float(x))
    if not x > 0:
        raise ValueError("x must be nonzero")
    if nu < 0:
        raise OracleError("the U-integral needs nu >= 0")
    if nu == 0:
        return QuadratureResult(math.exp(-x), 0.0, 0, "u_integral")
    s = sin_half_pi(nu)
    if s == 0.0:
        return QuadratureResult(0.0, 0.0, 0, "u_integral")
    al = nu / 2.0

    def L(t):
        return -2.0 * x * t + (al - 1.0) * np.log(t) - (al + 1.0) * np.log1p(t)

    if al > 1:
        b = 2.0 * x + 2.0
        tpk = (-b + math.sqrt(b * b + 8.0 * x * (al - 1.0))) / (4.0 * x)
    else:
        tpk = min(1.0, 1.0 / x)
    Lmax = float(L(np.array(tpk)))
    hi = tpk + 1.0
    while float(L(np.array(hi))) > Lmax - _CUT:
        hi *= 2.0
    f = lambda t: np.exp(L(t) - Lmax)
    if al < 1:
        # t = s**(1/al) removes the t**(al-1) singularity, whose mass sits far
        # below the smallest double-exponential node when al is small
        def g(s):
            t = s ** (1.0 / al)
            return np.exp(-2.0 * x * t - (al + 1.0) * np.log1p(t) - Lmax) / al

        head = tanh_sinh(g, 0.0, tpk ** al, level)
        tail = tanh_sinh_segments(f, [tpk, hi], level)
        q = type(tail)(head.value + tail.value, head.error + tail.error, head.n_evals + tail.n_evals)
    else:
        # first segment receives offsets from 0 so t**(al-1) is accurate there
        q = tanh_sinh_segments(f, [0.0, tpk, hi], level, offsets_first=True)
    scale = s / math.pi * math.exp(-x + Lmax)
    return QuadratureResult(float(scale * q.value), float(abs(scale) * q.error), q.n_evals, "u_integral")


# ---------------------------------------------------------------- cross check

@dataclass(frozen=True)
class CrossCheckReport:
    x: float
    nu: float
    which: str
    results: dict
    failures: dict
    deviations: dict
    certified: QuadratureResult

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values(), default=0.0)


def _rel(a, b):
    if a == b:
        return 0.0
    return abs(a - b) / max(abs(a), abs(b))


def oracle_cross_check(x: float, nu: float, which: str = "bateman") -> CrossCheckReport:
    """Run every applicable oracle and report pairwise relative deviations.

    The certified value is the contour result when available.  For k_0 the
    U-route is the closed form exp(-|x|) (k_0 is even in x).
    """
    w = _which(which)
    _check_point(x, nu)
    X = abs(x)
    runs = {}
    if X <= DIRECT_MAX_X:
        runs["direct"] = lambda: oracle_direct(x, nu, w)
    if X >= CONTOUR_MIN_X and nu > 0:
        runs["contour"] = lambda: oracle_contour(x, nu, w)
    if w == "k" and (x < 0 or nu == 0):
        runs["u_integral"] = lambda: oracle_U_negative(X, nu)
    results, failures = {}, {}
    for name, fn in runs.items():
        try:
            results[name] = fn()
        except (OracleError, ValueError) as e:
            failures[name] = str(e)
    if not results:
        raise OracleError(f"all oracles failed at x={x}, nu={nu}: {failures}")
    names = list(results)
    dev = {}
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            dev[(names[i], names[j])] = _rel(results[names[i]].value, results[names[j]].value)
    cert = results.get("contour") or results.get("u_integral") or results[names[0]]
    return CrossCheckReport(x, nu, w, results, failures, dev, cert)


def certified_value(x: float, nu: float, which: str = "bateman") -> QuadratureResult:
    """Best single oracle value: contour where applicable, else U-integral / direct."""
    w = _which(which)
    X = abs(x)
    if X >= CONTOUR_MIN_X and nu > 0:
        return oracle_contour(x, nu, w)
    if w == "k" and (x < 0 or nu == 0):
        return oracle_U_negative(X, nu)
    return oracle_direct(x, nu, w)
