from __future__ import absolute_import

import math
import pickle
import unittest

import numpy as np

from pyviewport.exception import DimensionMismatchError
from pyviewport.features import ChunkFeatures
from pyviewport.features import FEATURE_NAMES
from pyviewport.features import N_FEATURES
from pyviewport.features import TraceChunk
from pyviewport.features import extract_all
from pyviewport.features import extract_f1
from pyviewport.generate import linear_chunk
from pyviewport.geometry import wrap_angle


class TestViewportFeatures(unittest.TestCase):
    """
    The 15 behavioural features of a trace chunk
    """

    def test_names(self):
        self.assertEqual(N_FEATURES, 15)
        self.assertEqual(FEATURE_NAMES[0], 'pos_yaw_mean')
        self.assertEqual(FEATURE_NAMES[-1], 'area_explored')

    def test_static_chunk(self):
        features = extract_f1(linear_chunk(0.4, -0.2, 0.0, 0.0, video_id=1, chunk_id=2, user_id=3))
        self.assertEqual(features.key, (1, 2, 3))
        self.assertAlmostEqual(features.pos_yaw_mean, 0.4)
        self.assertAlmostEqual(features.pos_pitch_p25, -0.2)
        self.assertEqual(features.speed_yaw_mean, 0.0)
        self.assertEqual(features.max_angle_pitch, 0.0)
        self.assertAlmostEqual(features.area_explored, 20.85, delta=0.5)

    def test_yaw_drift(self):
        features = extract_f1(linear_chunk(0.0, 0.0, 0.5, 0.0))
        self.assertAlmostEqual(features.pos_yaw_mean, 0.475)
        self.assertAlmostEqual(features.pos_yaw_p25, 0.2375)
        self.assertAlmostEqual(features.pos_yaw_p75, 0.7125)
        self.assertAlmostEqual(features.speed_yaw_mean, 0.5)
        self.assertAlmostEqual(features.speed_yaw_p25, 0.5)
        self.assertAlmostEqual(features.speed_pitch_mean, 0.0)
        self.assertAlmostEqual(features.max_angle_yaw, 0.95)
        self.assertAlmostEqual(features.max_angle_pitch, 0.0)

    def test_signed_rates(self):
        features = extract_f1(linear_chunk(0.0, 0.5, -0.5, -0.2))
        self.assertAlmostEqual(features.speed_yaw_mean, -0.5)
        self.assertAlmostEqual(features.speed_pitch_mean, -0.2)
        self.assertAlmostEqual(features.max_angle_yaw, 0.95)
        self.assertAlmostEqual(features.max_angle_pitch, 0.38)

    def test_seam_invariance(self):
        plain = extract_f1(linear_chunk(0.0, 0.0, 0.5, 0.0))
        seam = extract_f1(linear_chunk(math.pi - 0.4, 0.0, 0.5, 0.0))
        for name in ('speed_yaw_mean', 'speed_yaw_p25', 'speed_yaw_p75', 'max_angle_yaw'):
            self.assertAlmostEqual(getattr(plain, name), getattr(seam, name), msg=name)
        # yaw quartile spread does not jump at the seam
        self.assertAlmostEqual(plain.pos_yaw_p75 - plain.pos_yaw_p25, seam.pos_yaw_p75 - seam.pos_yaw_p25)
        self.assertAlmostEqual(seam.pos_yaw_mean, math.pi - 0.4 + 0.475 - 2 * math.pi)
        self.assertAlmostEqual(plain.area_explored, seam.area_explored, delta=1e-9)

    def test_global_yaw_rotation(self):
        rng = np.random.default_rng(4)
        yaw = np.cumsum(rng.normal(0.0, 0.1, 20))
        pitch = np.clip(0.2 + np.cumsum(rng.normal(0.0, 0.05, 20)), -1.5, 1.5)
        plain = extract_f1(TraceChunk(0, 0, 0, wrap_angle(yaw), pitch))
        for offset in (1.1, math.pi - 0.05, -2.9):
            rotated = extract_f1(TraceChunk(0, 0, 0, wrap_angle(yaw + offset), pitch))
            for name in FEATURE_NAMES:
                if name.startswith('pos_yaw'):
                    shift = wrap_angle(getattr(rotated, name) - getattr(plain, name) - offset)
                    self.assertAlmostEqual(shift, 0.0, delta=1e-9, msg=name)
                else:
                    self.assertAlmostEqual(getattr(rotated, name), getattr(plain, name), delta=1e-9, msg=name)

    def test_time_compression_scales_speed(self):
        slow = linear_chunk(0.2, -0.1, 0.4, 0.15, rate_hz=10)
        fast = linear_chunk(0.2, -0.1, 1.2, 0.45, rate_hz=30)
        np.testing.assert_allclose(fast.yaw, slow.yaw, atol=1e-12)
        slow_features = extract_f1(slow)
        fast_features = extract_f1(fast)
        for name in FEATURE_NAMES:
            expected = getattr(slow_features, name)
            if name.startswith('speed_'):
                expected *= 3.0
            self.assertAlmostEqual(getattr(fast_features, name), expected, delta=1e-9, msg=name)

    def test_extract_all(self):
        chunks = [linear_chunk(0.1 * n, 0.0, 0.2, 0.0, user_id=n) for n in range(4)]
        features = extract_all(chunks)
        self.assertEqual([feature.key for feature in features], [chunk.key for chunk in chunks])
        for feature, chunk in zip(features, chunks):
            np.testing.assert_allclose(feature.values, extract_f1(chunk).values)

    def test_feature_vector(self):
        features = ChunkFeatures(np.arange(N_FEATURES, dtype=float), key=(0, 0, 0))
        self.assertEqual(features.to_dict()['area_explored'], 14.0)
        copied = pickle.loads(pickle.dumps(features))
        np.testing.assert_array_equal(copied.as_array(), features.values)
        with self.assertRaises(AttributeError):
            features.unknown_feature
        with self.assertRaises(DimensionMismatchError):
            ChunkFeatures(np.zeros(14))
