"""
Spherical math on head orientations.

Orientations are (yaw, pitch) pairs in radians: yaw is the azimuth in
[-pi, pi), pitch the elevation in [-pi/2, pi/2]. Every function accepts
scalars or numpy arrays and broadcasts.
"""
import math

import numpy as np

from ..exception import DimensionMismatchError
from ..exception import InsufficientDataError
from ..exception import TraceValidationError

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi


def wrap_angle(angle):
    """
    Wraps yaw angles into [-pi, pi)
    """
    wrapped = np.mod(np.asarray(angle, dtype=np.float64) + math.pi, TWO_PI) - math.pi
    # mod can round up to exactly 2pi for tiny negative inputs
    wrapped = np.where(wrapped >= math.pi, wrapped - TWO_PI, wrapped)
    return float(wrapped) if np.ndim(wrapped) == 0 else wrapped


def clamp_pitch(pitch):
    clamped = np.clip(np.asarray(pitch, dtype=np.float64), -HALF_PI, HALF_PI)
    return float(clamped) if np.ndim(clamped) == 0 else clamped


class SphericalPoint(object):
    """
    A view direction on the unit sphere.
    """

    def __init__(self, yaw, pitch):
        self.yaw = wrap_angle(yaw)
        self.pitch = clamp_pitch(pitch)

    def __iter__(self):
        return iter((self.yaw, self.pitch))

    def __eq__(self, other):
        return isinstance(other, SphericalPoint) and tuple(self) == tuple(other)

    def __hash__(self):
        return hash(tuple(self))

    def __repr__(self):
        return 'SphericalPoint(yaw={:.6f}, pitch={:.6f})'.format(self.yaw, self.pitch)

    def direction(self):
        return direction_vector(self.yaw, self.pitch)


class ViewportSpec(object):
    """
    Angular size of the rendered viewport. The viewport region around a view
    direction is the yaw/pitch box of these extents centred on it.
    """
    DEFAULT_EXTENT = math.radians(100.0)

    def __init__(self, yaw_extent=DEFAULT_EXTENT, pitch_extent=DEFAULT_EXTENT):
        for name, extent in (('yaw_extent', yaw_extent), ('pitch_extent', pitch_extent)):
            if not 0.0 < extent <= math.pi:
                raise TraceValidationError(
                    "{} must lie in (0, pi], got {}".format(name, extent))
        self.yaw_extent = float(yaw_extent)
        self.pitch_extent = float(pitch_extent)

    @classmethod
    def from_degrees(cls, yaw_deg, pitch_deg):
        return cls(math.radians(yaw_deg), math.radians(pitch_deg))

    @property
    def theta_max(self):
        """
        Centre distance at which two viewports stop sharing content.
        """
        return min(self.yaw_extent, self.pitch_extent)

    def __repr__(self):
        return 'ViewportSpec({:.1f}deg x {:.1f}deg)'.format(
            math.degrees(self.yaw_extent), math.degrees(self.pitch_extent))


def direction_vector(yaw, pitch):
    """
    Unit view vector in the canonical frame: x forward, y left, z up.
    :return: array of shape (..., 3)
    """
    yaw = np.asarray(yaw, dtype=np.float64)
    pitch = np.asarray(pitch, dtype=np.float64)
    cos_pitch = np.cos(pitch)
    return np.stack((cos_pitch * np.cos(yaw), cos_pitch * np.sin(yaw), np.sin(pitch)), axis=-1)


def yaw_pitch_from_vector(vector):
    """
    Inverse of `direction_vector`. The vector does not need to be normalized.
    """
    vector = np.asarray(vector, dtype=np.float64)
    x, y, z = vector[..., 0], vector[..., 1], vector[..., 2]
    yaw = wrap_angle(np.arctan2(y, x))
    pitch = np.arctan2(z, np.hypot(x, y))
    return yaw, clamp_pitch(pitch)


def geodesic(yaw_a, pitch_a, yaw_b, pitch_b):
    """
    Central angle between two view directions, in [0, pi].

    Both operand orders evaluate the same floating point expression, so the
    distance is exactly symmetric.
    """
    cos_angle = (np.sin(pitch_a) * np.sin(pitch_b)
                 + np.cos(pitch_a) * np.cos(pitch_b) * np.cos(np.subtract(yaw_a, yaw_b)))
    angle = np.arccos(np.clip(cos_angle, -1.0, 1.0))
    return float(angle) if np.ndim(angle) == 0 else angle


def point_geodesic(a, b):
    """
    :type a: SphericalPoint
    :type b: SphericalPoint
    """
    return geodesic(a.yaw, a.pitch, b.yaw, b.pitch)


def overlap_proxy(distance, viewport=None):
    """
    Fraction of viewport content shared by two viewports whose centres are
    `distance` radians apart: 1 when they coincide, falling linearly to 0 at
    one viewport extent.
    """
    viewport = ViewportSpec() if viewport is None else viewport
    overlap = np.maximum(0.0, 1.0 - np.asarray(distance, dtype=np.float64) / viewport.theta_max)
    return float(overlap) if np.ndim(overlap) == 0 else overlap


def _check_same_length(a, b):
    if len(a.yaw) != len(b.yaw):
        raise DimensionMismatchError(
            "chunks have different sample counts: {} and {}".format(len(a.yaw), len(b.yaw)))


def trace_vpo(a, b, viewport=None):
    """
    Pairwise viewport overlap of two equally long chunks: the mean overlap
    proxy over corresponding samples.
    """
    _check_same_length(a, b)
    distances = geodesic(a.yaw, a.pitch, b.yaw, b.pitch)
    return float(np.mean(overlap_proxy(distances, viewport)))


def unwrap_yaw(yaw):
    """
    Removes 2pi jumps, anchored at the first sample.
    """
    return np.unwrap(np.asarray(yaw, dtype=np.float64))


def angular_speed(chunk):
    """
    Unsigned angular speed along the trace: geodesic length of every step
    times the sample rate, in rad/s. One value per step.
    """
    if len(chunk.yaw) < 2:
        raise InsufficientDataError("angular speed needs at least 2 samples")
    yaw = np.asarray(chunk.yaw)
    pitch = np.asarray(chunk.pitch)
    return geodesic(yaw[:-1], pitch[:-1], yaw[1:], pitch[1:]) * chunk.rate_hz


def mean_angular_speed(chunk):
    return float(np.mean(angular_speed(chunk)))


def axis_rates(chunk):
    """
    Signed per-axis angular rates (yaw rate, pitch rate) in rad/s, one value
    per step. Yaw differences are wrapped, so a trace crossing the +-pi seam
    keeps its rate.
    """
    if len(chunk.yaw) < 2:
        raise InsufficientDataError("axis rates need at least 2 samples")
    yaw_rate = wrap_angle(np.diff(np.asarray(chunk.yaw, dtype=np.float64))) * chunk.rate_hz
    pitch_rate = np.diff(np.asarray(chunk.pitch, dtype=np.float64)) * chunk.rate_hz
    return np.atleast_1d(yaw_rate), pitch_rate
