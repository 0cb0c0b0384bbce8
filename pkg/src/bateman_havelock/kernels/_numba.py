"""numba-compiled versions of the kernels in ``_source``."""

from numba import njit

from . import _source

_phase_offset = njit(cache=True)(_source.phase_offset)
_phase_slope = njit(cache=True)(_source.phase_slope)
_theta = njit(cache=True)(_source._theta)

# the kernel bodies look these helpers up as module globals
_source_globals = {
    "phase_offset": _phase_offset,
    "phase_slope": _phase_slope,
    "_theta": _theta,
}


def _rebind(fn):
    import types

    g = dict(fn.__globals__)
    g.update(_source_globals)
    return types.FunctionType(fn.__code__, g, fn.__name__, fn.__defaults__, fn.__closure__)


trace_branch = njit(cache=True)(_rebind(_source.trace_branch))
oscillatory_panels = njit(cache=True)(_rebind(_source.oscillatory_panels))
