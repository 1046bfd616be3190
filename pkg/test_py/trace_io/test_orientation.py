from __future__ import absolute_import

import math
import unittest

import numpy as np

from pyviewport.geometry import direction_vector
from pyviewport.trace import parse_trace
from pyviewport.trace.orientation import quaternion_matrices
from pyviewport.trace.orientation import yaw_pitch_from_quaternions


class TestQuaternionOrientation(unittest.TestCase):
    """
    View directions recovered from recorded quaternions
    """

    def test_quarter_turn_about_vertical(self):
        half = math.cos(math.radians(45))
        raw = '0.0,{0},0,0,{0}\n0.1,{0},0,0,{0}\n'.format(repr(half)).encode()
        trace = parse_trace(raw, 'quaternion_csv')
        np.testing.assert_allclose(trace.yaw, [math.pi / 2] * 2, atol=1e-12)
        np.testing.assert_allclose(trace.pitch, [0.0, 0.0], atol=1e-12)

    def test_any_unit_quaternion_keeps_direction(self):
        rng = np.random.default_rng(11)
        quaternions = rng.normal(size=(2000, 4))
        quaternions /= np.linalg.norm(quaternions, axis=1)[:, None]
        yaw, pitch = yaw_pitch_from_quaternions(quaternions)

        expected = quaternion_matrices(quaternions) @ np.array([1.0, 0.0, 0.0])
        recovered = direction_vector(yaw, pitch)
        cosines = np.clip(np.sum(expected * recovered, axis=1), -1.0, 1.0)
        self.assertLess(float(np.max(np.arccos(cosines))), 1e-6)

    def test_roll_is_dropped(self):
        # rolling about the view axis leaves the direction unchanged
        roll = 0.8
        rolled = np.array([[math.cos(roll / 2), math.sin(roll / 2), 0.0, 0.0]])
        yaw, pitch = yaw_pitch_from_quaternions(rolled)
        self.assertAlmostEqual(yaw[0], 0.0)
        self.assertAlmostEqual(pitch[0], 0.0)
