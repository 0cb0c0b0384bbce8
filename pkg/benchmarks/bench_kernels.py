"""Compare the numba and pure-NumPy kernel backends.

Times the two hot loops (descent-path continuation and the Gauss-Legendre
panel sums of the direct oracle) under both backends, checks that they
agree, and prints a small table.  Run with ``python benchmarks/bench_kernels.py``.
"""

import argparse
import time

import numpy as np

from bateman_havelock.contours import saddle
from bateman_havelock.kernels import TAN_MINUS_U, _numpy
from bateman_havelock.quadrature import gauss_legendre, tanh_sinh_rule


def _best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def _cases():
    sd = saddle("pos-osc", 2.0)
    w = ((75 / 20) ** 0.5) * tanh_sinh_rule(7).left
    gx, gw = gauss_legendre(20)
    trace = ("trace_branch", (sd.u0, sd.t0, sd.sa, sd.m, sd.d, np.ascontiguousarray(w),
                              TAN_MINUS_U, False))
    panels = ("oscillatory_panels", (30.0, -60.0, 0.5, 40, 4000, gx, gw))
    return [trace, panels]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    try:
        from bateman_havelock.kernels import _numba
    except ImportError:
        _numba = None
        print("numba not importable; timing the NumPy backend only")

    print(f"{'kernel':<20}{'numpy [ms]':>12}{'numba [ms]':>12}{'speed-up':>10}{'max |diff|':>13}")
    for name, call_args in _cases():
        t_np, r_np = _best_of(lambda: getattr(_numpy, name)(*call_args), args.repeat)
        if _numba is None:
            print(f"{name:<20}{1e3 * t_np:12.2f}")
            continue
        getattr(_numba, name)(*call_args)  # compile (or load from cache) outside the timing
        t_nb, r_nb = _best_of(lambda: getattr(_numba, name)(*call_args), args.repeat)
        diff = max(float(np.max(np.abs(np.asarray(a) - np.asarray(b))))
                   for a, b in zip(r_np[:2], r_nb[:2]))
        print(f"{name:<20}{1e3 * t_np:12.2f}{1e3 * t_nb:12.2f}{t_np / t_nb:10.1f}{diff:13.2e}")


if __name__ == "__main__":
    main()
