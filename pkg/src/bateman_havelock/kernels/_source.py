"""Kernel bodies written in the numba-compatible subset of Python.

These functions run as plain Python when JIT compilation is disabled and
are wrapped with ``numba.njit`` otherwise (see ``kernels/__init__.py``).
They take and return only scalars and float/complex arrays.
"""

import cmath
import math

import numpy as np


def phase_offset(h, u0, t0, sa, tanser, double_saddle):
    """``psi(u0 + h) - psi(u0)`` without cancellation in ``h``.

    ``psi(u) = i (tan u + sa * u)`` with the saddle condition
    ``sa = -(1 + t0**2)`` built in.  From the addition formula
    ``tan(u0 + h) - t0 = c T / (1 - t0 T)`` with ``T = tan h`` and
    ``c = 1 + t0**2`` the offset is ``i c (T - h + t0 T h) / (1 - t0 T)``;
    ``tan h - h`` is summed from its Maclaurin series for small ``|h|``.
    """
    if abs(h) < 0.3:
        h2 = h * h
        tmh = 0j
        p = h * h2
        for c in tanser:
            tmh += c * p
            p *= h2
    else:
        tmh = cmath.tan(h) - h
    T = h + tmh
    c = 1.0 + t0 * t0
    return 1j * c * (tmh + t0 * T * h) / (1.0 - t0 * T)


def phase_slope(h, u0, t0):
    """``psi'(u0 + h) = i (tan u - t0)(tan u + t0)`` where ``t0 = tan u0``."""
    tu = cmath.tan(u0 + h)
    diff = cmath.sin(h) / (cmath.cos(u0 + h) * cmath.cos(u0))
    return 1j * diff * (tu + t0)


def trace_branch(u0, t0, sa, m, d, w, tanser, double_saddle):
    """Follow ``psi(u0 + h(w)) = psi(u0) - w**m`` along sorted ``w >= 0``.

    Returns ``(h, dhdw, status)``.  ``d`` is ``dh/dw`` at ``w = 0``, which
    fixes the branch.  Steps between requested nodes are subdivided until
    Newton converges close to the Euler predictor.  ``status`` is 0 on
    success, otherwise ``1 + index`` of the first node that failed.
    """
    n = w.shape[0]
    hs = np.empty(n, dtype=np.complex128)
    dh = np.empty(n, dtype=np.complex128)
    wc = 0.0
    hc = 0j
    dc = d
    for j in range(n):
        target = w[j]
        step = target - wc
        tries = 0
        while wc < target:
            if wc + step > target or step <= 1e-15 * target:
                step = target - wc
            wn = wc + step
            if wn <= wc:
                # gap below the spacing of doubles: land on the node
                wn = target
            pred = hc + dc * step
            hn = pred
            ok = False
            for _ in range(40):
                f = phase_offset(hn, u0, t0, sa, tanser, double_saddle) + wn ** m
                fp = phase_slope(hn, u0, t0)
                delta = f / fp
                hn = hn - delta
                if abs(delta) <= 2e-15 * (abs(hn) + 1e-300) or abs(delta) < 1e-300:
                    ok = True
                    break
            drift = abs(hn - pred)
            if ok and drift <= 0.2 * abs(dc * step) + 1e-14 * abs(hn) + 1e-300:
                wc = wn
                hc = hn
                if wc > 0.0:
                    dc = -m * wc ** (m - 1) / phase_slope(hc, u0, t0)
                step = step * 2.0
                tries = 0
            else:
                step = step * 0.5
                tries += 1
                if tries > 60:
                    return hs, dh, j + 1
        hs[j] = hc
        dh[j] = dc if wc > 0.0 else d
    return hs, dh, 0


def _theta(t, X, snu):
    return X * t + snu * math.atan(t)


def oscillatory_panels(X, snu, off, m0, npan, gx, gw):
    """Integrals of ``trig(theta(t)) / (1 + t**2)`` between consecutive zeros.

    ``theta(t) = X t + snu * arctan t`` and the zeros are where
    ``theta = (m + off) pi`` for ``m = m0 .. m0 + npan``; ``off`` is 0.5 for
    cosine and 0 for sine.  Returns the zeros and the ``npan`` panel values
    from ``npan``-point Gauss-Legendre rules (``gx``, ``gw`` on [-1, 1]).
    """
    zeros = np.empty(npan + 1)
    for k in range(npan + 1):
        target = (m0 + k + off) * math.pi
        if snu < 0:
            t = (target - snu * math.pi / 2) / X
        else:
            t = max(0.0, (target - snu * math.pi / 2) / X)
        for _ in range(100):
            f = _theta(t, X, snu) - target
            fp = X + snu / (1.0 + t * t)
            dt = f / fp
            t -= dt
            if abs(dt) <= 1e-16 * (1.0 + t):
                break
        zeros[k] = t
    vals = np.empty(npan)
    cosine = off != 0.0
    for k in range(npan):
        a = zeros[k]
        b = zeros[k + 1]
        half = 0.5 * (b - a)
        mid = 0.5 * (a + b)
        acc = 0.0
        for i in range(gx.shape[0]):
            t = mid + half * gx[i]
            th = _theta(t, X, snu)
            tr = math.cos(th) if cosine else math.sin(th)
            acc += gw[i] * tr / (1.0 + t * t)
        vals[k] = acc * half
    return zeros, vals
