import math

import numpy as np

from ..exception import InsufficientDataError
from ..geometry import unwrap_yaw
from ..geometry import wrap_angle
from .samples import ViewportTrace

DEFAULT_RATE_HZ = 10

# slack for floating point error when counting grid points inside the span
_GRID_EPS = 1e-9


def uniform_grid(span, target_hz):
    """
    Sample times 0, 1/target_hz, ... up to and including `span`.
    """
    count = int(math.floor(span * target_hz + _GRID_EPS)) + 1
    return np.arange(count, dtype=np.float64) / target_hz


def resample(trace, target_hz=DEFAULT_RATE_HZ):
    """
    Resamples a trace onto a uniform grid starting at its first sample, which
    becomes t=0. Yaw is interpolated along the short arc (unwrap, interpolate,
    wrap), pitch linearly. The grid never extends past the last recorded
    sample.

    :type trace: ViewportTrace
    :param target_hz: output rate
    :rtype: ViewportTrace
    """
    if len(trace) < 2:
        raise InsufficientDataError("trace ({}, {}) has fewer than 2 samples".format(*trace.key))
    t = trace.t - trace.t[0]
    span = float(t[-1])
    if span < 1.0 / target_hz - _GRID_EPS:
        raise InsufficientDataError("trace ({}, {}) spans {:.3f}s, shorter than one {} Hz step".format(
            trace.video_id, trace.user_id, span, target_hz))

    grid = uniform_grid(span, target_hz)
    yaw = wrap_angle(np.interp(grid, t, unwrap_yaw(trace.yaw)))
    pitch = np.interp(grid, t, trace.pitch)
    return ViewportTrace(trace.video_id, trace.user_id, grid, yaw, pitch, rate_hz=target_hz)
