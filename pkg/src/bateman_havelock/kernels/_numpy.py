"""Pure NumPy implementations of the hot kernels (no JIT)."""

import numpy as np

from ._source import trace_branch as _trace_branch_py


def trace_branch(u0, t0, sa, m, d, w, tanser, double_saddle):
    # continuation is sequential by nature; the Python body is used as is
    return _trace_branch_py(complex(u0), complex(t0), float(sa), int(m), complex(d),
                            np.ascontiguousarray(w, dtype=float), tanser, bool(double_saddle))


def oscillatory_panels(X, snu, off, m0, npan, gx, gw):
    target = (m0 + np.arange(npan + 1) + off) * np.pi
    t = (target - snu * np.pi / 2) / X
    if snu >= 0:
        t = np.maximum(t, 0.0)
    for _ in range(100):
        dt = (X * t + snu * np.arctan(t) - target) / (X + snu / (1.0 + t * t))
        t = t - dt
        if np.all(np.abs(dt) <= 1e-16 * (1.0 + t)):
            break
    a, b = t[:-1], t[1:]
    half = 0.5 * (b - a)
    nodes = (0.5 * (a + b))[:, None] + half[:, None] * gx[None, :]
    th = X * nodes + snu * np.arctan(nodes)
    trig = np.cos(th) if off != 0.0 else np.sin(th)
    vals = (trig / (1.0 + nodes * nodes)) @ gw * half
    return t, vals
