"""
Conversion of recorded head orientations to canonical yaw / pitch.

The canonical frame is right-handed with x forward, y left and z up. Yaw is
the rotation of the view direction about the vertical axis, pitch its
elevation. Source datasets record orientations in their own frames; a
`SourceFrame` names which of their axes is forward and which is up.
"""
import math

import numpy as np

from ..exception import TraceValidationError
from ..geometry import clamp_pitch
from ..geometry import wrap_angle

# Quaternions whose norm deviates more than this from 1 are rejected
QUATERNION_NORM_TOLERANCE = 1e-3

_AXES = {
    '+x': (1.0, 0.0, 0.0), '-x': (-1.0, 0.0, 0.0),
    '+y': (0.0, 1.0, 0.0), '-y': (0.0, -1.0, 0.0),
    '+z': (0.0, 0.0, 1.0), '-z': (0.0, 0.0, -1.0),
}


class SourceFrame(object):
    """
    Axis mapping of a source dataset: `forward` is the body axis the viewer
    looks along at identity rotation, `up` the world vertical axis. Both are
    axis strings such as '+x' or '-z'.
    """

    def __init__(self, forward='+x', up='+z'):
        try:
            self.forward = np.array(_AXES[forward])
            self.up = np.array(_AXES[up])
        except KeyError as e:
            raise TraceValidationError("unknown axis {}".format(e))
        if abs(np.dot(self.forward, self.up)) > 0.5:
            raise TraceValidationError("forward {} and up {} are not orthogonal".format(forward, up))
        self.names = (forward, up)
        # completes the right-handed (forward, left, up) basis
        self.left = np.cross(self.up, self.forward)

    @classmethod
    def from_dict(cls, data):
        data = data or {}
        return cls(data.get('forward', '+x'), data.get('up', '+z'))

    def to_dict(self):
        return {'forward': self.names[0], 'up': self.names[1]}

    def __repr__(self):
        return 'SourceFrame(forward={}, up={})'.format(*self.names)


DEFAULT_FRAME = SourceFrame()


def quaternion_matrices(quaternions):
    """
    Rotation matrices of an (N, 4) array of unit quaternions (w, x, y, z).
    Vectorized form of the homogeneous `quaternion_matrix` transform,
    without the translation row.
    """
    q = np.asarray(quaternions, dtype=np.float64) * math.sqrt(2.0)
    w, x, y, z = q[:, 0], q[:, 1], q[:, 2], q[:, 3]
    return np.stack((
        np.stack((1.0 - y * y - z * z, x * y - z * w, x * z + y * w), axis=-1),
        np.stack((x * y + z * w, 1.0 - x * x - z * z, y * z - x * w), axis=-1),
        np.stack((x * z - y * w, y * z + x * w, 1.0 - x * x - y * y), axis=-1),
    ), axis=1)


def normalize_quaternions(quaternions, tolerance=QUATERNION_NORM_TOLERANCE, line_numbers=None):
    """
    :param line_numbers: source line of every row, for error messages
    :return: unit quaternions
    """
    quaternions = np.asarray(quaternions, dtype=np.float64)
    norms = np.linalg.norm(quaternions, axis=1)
    bad = np.flatnonzero(np.abs(norms - 1.0) > tolerance)
    if len(bad) > 0:
        row = int(bad[0])
        line = line_numbers[row] if line_numbers is not None else row + 1
        raise TraceValidationError("non-unit quaternion at line {} (norm {:.6f})".format(line, norms[row]))
    return quaternions / norms[:, None]


def yaw_pitch_from_quaternions(quaternions, frame=DEFAULT_FRAME):
    """
    View direction of each orientation expressed as canonical yaw / pitch.
    Roll about the view axis is dropped.
    """
    directions = quaternion_matrices(quaternions) @ frame.forward
    forward = directions @ frame.forward
    left = directions @ frame.left
    up = directions @ frame.up
    yaw = wrap_angle(np.arctan2(left, forward))
    pitch = clamp_pitch(np.arctan2(up, np.hypot(forward, left)))
    return np.atleast_1d(yaw), np.atleast_1d(pitch)


def quaternion_from_yaw_pitch(yaw, pitch):
    """
    Unit quaternion (w, x, y, z) in the canonical frame turning the forward
    axis onto the (yaw, pitch) direction, with zero roll.
    Rotation order: pitch about the body y axis (negative angle tilts x up),
    then yaw about z.
    """
    half_yaw = 0.5 * np.asarray(yaw, dtype=np.float64)
    half_pitch = -0.5 * np.asarray(pitch, dtype=np.float64)
    cy, sy = np.cos(half_yaw), np.sin(half_yaw)
    cp, sp = np.cos(half_pitch), np.sin(half_pitch)
    return np.stack((cy * cp, -sy * sp, cy * sp, sy * cp), axis=-1)


def yaw_pitch_from_euler(yaw, pitch, degrees=False):
    """
    Euler rows only need unit conversion and range normalization.
    """
    yaw = np.asarray(yaw, dtype=np.float64)
    pitch = np.asarray(pitch, dtype=np.float64)
    if degrees:
        yaw = np.radians(yaw)
        pitch = np.radians(pitch)
    return np.atleast_1d(wrap_angle(yaw)), np.atleast_1d(clamp_pitch(pitch))
