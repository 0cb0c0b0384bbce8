"""Hot numerical kernels with an optional numba backend.

The backend is chosen once at import time.  Setting the environment
variable ``BATEMAN_HAVELOCK_NO_JIT=1`` (or having numba unavailable) selects
the pure NumPy path; results agree to rounding.  ``BACKEND`` names the
active one.
"""

import os

import numpy as np

from . import _numpy

_disable = os.environ.get("BATEMAN_HAVELOCK_NO_JIT", "").strip().lower() not in ("", "0", "false", "no")

if _disable:
    _impl = _numpy
    BACKEND = "numpy"
else:
    try:
        from . import _numba as _impl

        BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba is optional
        _impl = _numpy
        BACKEND = "numpy"


def _tan_minus_u_coeffs(n=24):
    # Maclaurin coefficients of tan u - u, from t' = 1 + t^2
    t = [0.0] * (2 * n + 4)
    t[1] = 1.0
    for k in range(1, 2 * n + 2):
        conv = sum(t[j] * t[k - j] for j in range(k + 1))
        t[k + 1] = conv / (k + 1)
    return np.array(t[3 : 2 * n + 4 : 2])


TAN_MINUS_U = _tan_minus_u_coeffs()


def trace_branch(u0, t0, sa, m, d, w, double_saddle=False):
    """See :func:`bateman_havelock.kernels._source.trace_branch`."""
    w = np.ascontiguousarray(w, dtype=np.float64)
    return _impl.trace_branch(complex(u0), complex(t0), float(sa), int(m), complex(d), w,
                              TAN_MINUS_U, bool(double_saddle))


def oscillatory_panels(X, snu, off, m0, npan, gx, gw):
    """See :func:`bateman_havelock.kernels._source.oscillatory_panels`."""
    return _impl.oscillatory_panels(float(X), float(snu), float(off), int(m0), int(npan),
                                    np.ascontiguousarray(gx, dtype=np.float64),
                                    np.ascontiguousarray(gw, dtype=np.float64))
