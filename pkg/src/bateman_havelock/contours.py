"""Steepest-descent paths of psi(u) = i(tan u -/+ a u) and their certification.

Two constructions are provided.  :func:`descent_branch` parametrises a half
path through a saddle by ``w`` with ``psi(u) = psi(u0) - w**m`` (m = 2, or
3 at the double saddle) and follows it by Newton continuation; this is what
the contour oracle integrates along.  :func:`trace_path` produces the
geometric paths (closed form for a > 1, level-set root finding for a < 1,
the two straight lines for negative argument) for export and plotting.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import kernels
from .regimes import Regime

PHASE_TOL = 1e-8
DEFAULT_HEIGHT = 12.0
_DECAY = 30.0 * math.log(10.0)  # integrand cut at 1e-30 of the saddle value


class PathTracingError(RuntimeError):
    """Newton continuation or level-set root finding failed."""


class CertificationError(RuntimeError):
    """A traced path violates the constant-phase or descent property."""


def psi(u, a: float, regime) -> np.ndarray:
    """Phase ``i(tan u - a u)`` (x > 0 regimes) or ``i(tan u + a u)`` (NegArg)."""
    u = np.asarray(u, dtype=complex)
    sa = a if Regime.parse(regime) is Regime.NegArg else -a
    return 1j * (np.tan(u) + sa * u)


# ---------------------------------------------------------------- w branches

@dataclass(frozen=True)
class Saddle:
    u0: complex
    sa: float
    m: int
    d: complex  # du/dw at w = 0 on the "plus" branch
    double: bool

    @property
    def t0(self) -> complex:
        return complex(np.tan(self.u0))

    @property
    def psi0(self) -> complex:
        return 1j * (self.t0 + self.sa * self.u0)


def saddle(regime, a: float) -> Saddle:
    """Saddle of the x > 0 phase (or the upper NegArg saddle) at ratio ``a``."""
    r = Regime.parse(regime)
    if r is Regime.NegArg:
        beta = math.atanh(1.0 / math.sqrt(1.0 + a))
        u0 = complex(math.pi / 2, beta)
        p2 = a * math.sqrt(1.0 + a)
        return Saddle(u0, a, 2, 1.0 / np.sqrt(complex(-p2)), False)
    if a == 1.0:
        mu = 3.0 ** (1.0 / 3.0) * complex(math.cos(math.pi / 6), math.sin(math.pi / 6))
        return Saddle(0j, -1.0, 3, mu, True)
    if a > 1:
        s = math.sqrt(a - 1.0)
        u0 = complex(math.atan(s), 0.0)
        p2 = 1j * a * s
    else:
        s = math.sqrt(1.0 - a)
        u0 = complex(0.0, math.atanh(s))
        p2 = complex(-a * s)
    return Saddle(u0, -a, 2, 1.0 / np.sqrt(-p2), False)


def descent_offsets(sd: Saddle, w, sign: int = 1):
    """Offsets ``h(w) = u(w) - u0`` and ``dh/dw`` on the half path leaving along ``sign*d``."""
    w = np.asarray(w, dtype=float)
    if w.size and (np.any(np.diff(w) < 0) or w[0] < 0):
        raise ValueError("w nodes must be sorted and nonnegative")
    h, dh, status = kernels.trace_branch(sd.u0, sd.t0, sd.sa, sd.m, sign * sd.d, w, sd.double)
    if status:
        raise PathTracingError(f"descent continuation failed at w = {w[status - 1]:.6g}")
    return h, dh


def descent_branch(sd: Saddle, w, sign: int = 1):
    """Points ``u(w)`` and ``du/dw`` on the half path leaving along ``sign*d``."""
    h, dh = descent_offsets(sd, w, sign)
    return sd.u0 + h, dh


def certify_branch(sd: Saddle, h, w, tol: float = PHASE_TOL) -> float:
    """Check constant Im psi and strictly decreasing Re psi along a w branch.

    ``h`` are the offsets from the saddle (``u - u0`` loses digits close to
    it).  Returns the maximum phase deviation; raises
    :class:`CertificationError`.
    """
    off = phase_offsets(sd, h)
    dev = float(np.max(np.abs(off.imag))) if len(off) else 0.0
    if dev > tol * max(1.0, abs(sd.psi0.imag)):
        raise CertificationError(f"phase deviation {dev:.3e} exceeds {tol:.0e}")
    # on the path the offset is -w**m.  Monotonicity is checked between
    # nodes whose targets differ by more than the tracking accuracy
    # (tanh-sinh nodes cluster to rounding level near the ends).
    w = np.asarray(w, dtype=float)
    target = -(w ** sd.m)
    re = off.real
    scale = np.maximum(1.0, np.abs(target))
    if np.any(np.abs(re - target) > tol * scale):
        raise CertificationError("branch points drifted off the level Re psi = -w**m")
    keep = np.concatenate([[True], np.diff(target) < -tol * scale[1:]]) & (w > 0)
    if np.any(np.diff(re[keep]) >= 0):
        raise CertificationError("Re psi is not strictly decreasing along the branch")
    return dev


def phase_offsets(sd: Saddle, h) -> np.ndarray:
    """Vectorised ``psi(u0 + h) - psi(u0)``, accurate for small ``|h|``."""
    h = np.asarray(h, dtype=complex)
    small = np.abs(h) < 0.3
    tmh = np.tan(h) - h
    if np.any(small):
        hs = h[small]
        h2 = hs * hs
        p = hs * h2
        acc = np.zeros_like(hs)
        for c in kernels.TAN_MINUS_U:
            acc += c * p
            p = p * h2
        tmh[small] = acc
    T = h + tmh
    t0 = sd.t0
    return 1j * (1.0 + t0 * t0) * (tmh + t0 * T * h) / (1.0 - t0 * T)


# ---------------------------------------------------------------- geometric paths

@dataclass(frozen=True)
class ContourPath:
    """One leg of a discretised integration path.

    ``exponent`` is +1 when the leg carries ``exp(x psi)`` and -1 for the
    conjugate ``exp(-x psi)``; Re(exponent * psi) decreases from the first
    node onwards.
    """

    nodes: np.ndarray
    regime: Regime
    branch: str
    phase_const: float
    leg: str
    a: float
    exponent: int = 1

    @property
    def psi(self) -> np.ndarray:
        return psi(self.nodes, self.a, self.regime)

    def phase_deviation(self) -> np.ndarray:
        return np.abs(self.psi.imag - self.phase_const)

    def certify(self, tol: float = PHASE_TOL) -> float:
        dev = self.phase_deviation()
        worst = float(dev.max()) if dev.size else 0.0
        if worst > tol:
            raise CertificationError(f"{self.leg}: phase deviation {worst:.3e} exceeds {tol:.0e}")
        re = (self.exponent * self.psi).real
        if np.any(np.diff(re) >= 0):
            raise CertificationError(f"{self.leg}: Re psi does not decrease monotonically")
        return worst


def _tan_real(xi, eta):
    # Re tan(xi + i eta), stable for large |eta|
    return np.sin(2 * xi) / (np.cos(2 * xi) + np.cosh(2 * eta))


def eta_closed_form(a: float, xi, sign: int = 1):
    """Height of the a > 1 descent path through arctan(sqrt(a-1)) at ``xi``."""
    c = a * math.atan(math.sqrt(a - 1.0)) - math.sqrt(a - 1.0)
    xi = np.asarray(xi, dtype=float)
    t = np.tan(xi)
    r = (t - a * xi + c) / (t * (1.0 + (a * xi - c) * t))
    r = np.clip(r, 0.0, 1.0)
    return sign * np.arctanh(np.sqrt(r))


def eta_level_set(a: float, xi: float, level: float, eta_max: float = 40.0) -> float:
    """Root ``eta > 0`` of ``Re tan(xi + i eta) - a xi = level`` by bracketing."""
    f = lambda e: _tan_real(xi, e) - a * xi - level  # noqa: E731
    f0 = f(0.0)
    if f0 == 0.0:
        return 0.0
    if f0 < 0 or f(eta_max) > 0:
        raise PathTracingError(f"level set not bracketed at xi = {xi:.12g}")
    return brentq(f, 0.0, eta_max, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)


def _geom(n, lo, hi, ratio):
    # nodes clustered towards lo by a geometric grading
    s = np.geomspace(1.0, ratio, n)
    return lo + (hi - lo) * s


def trace_path(regime, a: float, n: int = 128, x: float | None = None,
               height: float | None = None) -> tuple[ContourPath, ...]:
    """Discretised steepest-descent legs for ``regime`` at ratio ``a``.

    Returns the legs carrying ``exp(x psi)`` (and, at the double saddle, the
    conjugate ray).  ``x`` fixes the NegArg truncation heights from the
    1e-30 decay rule; otherwise ``height`` (default 12) is used.
    """
    r = Regime.parse(regime)
    if n < 64:
        raise ValueError("trace_path needs n >= 64")
    if not a > 0:
        raise ValueError("a must be positive")
    if r is Regime.PosOsc:
        legs = _trace_pos_osc(a, n)
    elif r is Regime.PosMono:
        legs = _trace_pos_mono(a, n)
    elif r is Regime.PosCoalesce:
        legs = _trace_coalesce(n)
    else:
        legs = _trace_neg(a, n, x, height)
    return tuple(legs)


def _trace_pos_osc(a, n):
    if not a > 1:
        raise ValueError("pos-osc paths need a > 1")
    s = math.sqrt(a - 1.0)
    u0 = math.atan(s)
    c = a * u0 - s
    n_ax = n // 4
    n_up = (n - n_ax) // 2
    n_lo = n - n_ax - n_up
    y = np.linspace(0.0, 6.0, n_ax)
    axis = ContourPath(-1j * y, Regime.PosOsc, "lower", 0.0, "axis", a)
    xi_up = u0 + (math.pi / 2 - 1e-3 - u0) * np.linspace(0.0, 1.0, n_up)
    upper = ContourPath(xi_up + 1j * eta_closed_form(a, xi_up, 1), Regime.PosOsc, "upper", -c,
                        "saddle-up", a)
    xi_lo = _geom(n_lo, c / a, u0, 1e-6)
    lower = ContourPath(xi_lo + 1j * eta_closed_form(a, xi_lo, -1), Regime.PosOsc, "lower", -c,
                        "saddle-down", a)
    return [axis, upper, lower]


def _trace_pos_mono(a, n):
    if not 0 < a < 1:
        raise ValueError("pos-mono paths need 0 < a < 1")
    y0 = math.atanh(math.sqrt(1.0 - a))
    n_ax = n // 3
    axis = ContourPath(1j * np.linspace(0.0, y0, n_ax), Regime.PosMono, "upper", 0.0, "axis", a,
                       exponent=1)
    xi = np.linspace(0.0, math.pi / 2 - 1e-3, n - n_ax)
    eta = np.empty_like(xi)
    eta[0] = y0
    for j in range(1, xi.size):
        eta[j] = eta_level_set(a, float(xi[j]), 0.0)
    leg = ContourPath(xi + 1j * eta, Regime.PosMono, "upper", 0.0, "saddle", a)
    return [axis, leg]


def _trace_coalesce(n):
    sd = saddle(Regime.PosCoalesce, 1.0)
    w = np.linspace(0.0, 1.5, n // 2)
    u, _ = descent_branch(sd, w)
    up = ContourPath(u, Regime.PosCoalesce, "upper", 0.0, "ray-up", 1.0, exponent=1)
    lo = ContourPath(np.conj(u), Regime.PosCoalesce, "lower", 0.0, "ray-down", 1.0, exponent=-1)
    return [up, lo]


def neg_heights(a: float, x: float | None, height: float | None):
    """(y_min, y_max, axis_max) for the NegArg legs."""
    if height is not None:
        hi = float(height)
        return 1e-2, hi, hi
    if x is None:
        return 1e-2, DEFAULT_HEIGHT, DEFAULT_HEIGHT
    X = abs(x)
    beta = math.atanh(1.0 / math.sqrt(1.0 + a))
    om = math.sqrt(1.0 + a) + a * beta
    g = lambda y: 1.0 / math.tanh(y) + a * y - om - _DECAY / X  # noqa: E731
    y_lo = brentq(g, 1e-300 if g(1e-300) > 0 else 1e-12, beta) if g(beta) < 0 else beta
    hi = beta + 1.0
    while g(hi) < 0:
        hi *= 2.0
    y_hi = brentq(g, beta, hi)
    ax = _DECAY / (X * a) + 1.0
    return max(y_lo, 1e-12), y_hi, ax


def _trace_neg(a, n, x, height):
    beta = math.atanh(1.0 / math.sqrt(1.0 + a))
    y_lo, y_hi, ax = neg_heights(a, x, height)
    n_ax = n // 3
    n_up = (n - n_ax) // 2
    n_dn = n - n_ax - n_up
    axis = ContourPath(1j * np.linspace(0.0, ax, n_ax), Regime.NegArg, "upper", 0.0, "axis", a)
    half = math.pi / 2
    up = ContourPath(np.array([complex(half, y) for y in np.linspace(beta, y_hi, n_up)]),
                     Regime.NegArg, "upper", half * a, "vertical-up", a)
    dn = ContourPath(np.array([complex(half, y) for y in np.linspace(beta, y_lo, n_dn)]),
                     Regime.NegArg, "upper", half * a, "vertical-down", a)
    return [axis, up, dn]


def paths_csv(legs) -> str:
    """CSV export: regime, branch, leg, Re u, Im u, Re psi, Im psi, phase_dev."""
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["regime", "branch", "leg", "re_u", "im_u", "re_psi", "im_psi", "phase_dev"])
    for leg in legs:
        p = leg.psi
        dev = leg.phase_deviation()
        for u, ps, dv in zip(leg.nodes, p, dev):
            wr.writerow([leg.regime.value, leg.branch, leg.leg, _fmt(u.real), _fmt(u.imag),
                         _fmt(ps.real), _fmt(ps.imag), _fmt(dv)])
    return buf.getvalue()


def _fmt(v: float) -> str:
    return f"{float(v):.11e}"
