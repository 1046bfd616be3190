from __future__ import absolute_import

import math
import unittest

import numpy as np

from pyviewport.exception import InsufficientDataError
from pyviewport.exception import TraceParseError
from pyviewport.exception import TraceValidationError
from pyviewport.trace import SourceFrame
from pyviewport.trace import parse_trace
from pyviewport.trace.orientation import quaternion_from_yaw_pitch


def quaternion_file(rows):
    lines = ['t,qw,qx,qy,qz']
    for t, yaw, pitch in rows:
        q = quaternion_from_yaw_pitch(yaw, pitch)
        lines.append(','.join(['{:.3f}'.format(t)] + ['{:.12f}'.format(v) for v in q]))
    return ('\n'.join(lines) + '\n').encode('utf-8')


class TestParseTrace(unittest.TestCase):
    """
    Raw trace files to canonical yaw / pitch
    """

    def test_euler_radians(self):
        raw = b"t,yaw,pitch\n0.0,0.5,0.1\n0.1,0.6,0.2\n"
        trace = parse_trace(raw, 'euler_csv', video_id=3, user_id=7)
        self.assertEqual(trace.key, (3, 7))
        np.testing.assert_allclose(trace.t, [0.0, 0.1])
        np.testing.assert_allclose(trace.yaw, [0.5, 0.6])
        np.testing.assert_allclose(trace.pitch, [0.1, 0.2])

    def test_euler_degrees_and_roll(self):
        raw = b"0.0,180.0,45.0,10.0\n0.1,-90.0,-100.0,10.0\n"
        trace = parse_trace(raw, 'euler_csv', degrees=True)
        # 180 degrees wraps to -pi, pitch beyond the pole is clamped
        self.assertAlmostEqual(trace.yaw[0], -math.pi)
        self.assertAlmostEqual(trace.pitch[0], math.pi / 4)
        self.assertAlmostEqual(trace.yaw[1], -math.pi / 2)
        self.assertAlmostEqual(trace.pitch[1], -math.pi / 2)

    def test_comments_and_blank_lines(self):
        raw = b"# recorded with a headset\n\nt;yaw;pitch\n0.0;0.0;0.0\n\n0.1;0.1;0.0\n"
        trace = parse_trace(raw, 'euler_csv')
        self.assertEqual(len(trace), 2)

    def test_quaternion_identity(self):
        raw = b"t,qw,qx,qy,qz\n0.0,1,0,0,0\n0.1,1,0,0,0\n"
        trace = parse_trace(raw, 'quaternion_csv')
        np.testing.assert_allclose(trace.yaw, [0.0, 0.0], atol=1e-12)
        np.testing.assert_allclose(trace.pitch, [0.0, 0.0], atol=1e-12)

    def test_quaternion_directions(self):
        rows = [(0.0, 0.3, 0.2), (0.1, -2.0, -0.7), (0.2, 3.0, 1.2)]
        trace = parse_trace(quaternion_file(rows), 'quaternion_csv')
        np.testing.assert_allclose(trace.yaw, [r[1] for r in rows], atol=1e-9)
        np.testing.assert_allclose(trace.pitch, [r[2] for r in rows], atol=1e-9)

    def test_quaternion_source_frame(self):
        # a device looking along -z with y up: identity looks at canonical (0, 0)
        raw = b"0.0,1,0,0,0\n0.1,1,0,0,0\n"
        trace = parse_trace(raw, 'quaternion_csv', frame=SourceFrame(forward='-z', up='+y'))
        np.testing.assert_allclose(trace.yaw, [0.0, 0.0], atol=1e-12)
        np.testing.assert_allclose(trace.pitch, [0.0, 0.0], atol=1e-12)

    def test_non_unit_quaternion(self):
        raw = b"t,qw,qx,qy,qz\n0.0,1,0,0,0\n0.1,2,0,0,0\n"
        with self.assertRaises(TraceValidationError) as context:
            parse_trace(raw, 'quaternion_csv')
        self.assertIn('line 3', str(context.exception))

    def test_non_increasing_time(self):
        raw = b"0.0,0,0\n0.2,0,0\n0.2,0,0\n"
        with self.assertRaises(TraceParseError) as context:
            parse_trace(raw, 'euler_csv')
        self.assertEqual(context.exception.line, 3)

    def test_negative_time(self):
        with self.assertRaises(TraceParseError):
            parse_trace(b"-0.1,0,0\n0.1,0,0\n", 'euler_csv')

    def test_wrong_column_count(self):
        with self.assertRaises(TraceParseError) as context:
            parse_trace(b"0.0,0,0\n0.1,0\n", 'euler_csv')
        self.assertEqual(context.exception.line, 2)

    def test_non_numeric(self):
        with self.assertRaises(TraceParseError):
            parse_trace(b"0.0,0,0\n0.1,abc,0\n", 'euler_csv')

    def test_non_finite(self):
        with self.assertRaises(TraceParseError):
            parse_trace(b"0.0,0,0\n0.1,nan,0\n", 'euler_csv')

    def test_unknown_format(self):
        with self.assertRaises(TraceParseError):
            parse_trace(b"0.0,0,0\n", 'json')

    def test_too_few_samples(self):
        with self.assertRaises(InsufficientDataError):
            parse_trace(b"t,yaw,pitch\n0.0,0,0\n", 'euler_csv')

    def test_bad_source_frame(self):
        with self.assertRaises(TraceValidationError):
            SourceFrame(forward='+x', up='-x')
        with self.assertRaises(TraceValidationError):
            SourceFrame(forward='+w')
