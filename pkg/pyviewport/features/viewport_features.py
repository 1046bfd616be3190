"""
Behavioural features of a single trace chunk.

Column order of the feature vector (f1..f15 in the feature table):

 1-3   pos_yaw_mean, pos_yaw_p25, pos_yaw_p75        rad
 4-6   pos_pitch_mean, pos_pitch_p25, pos_pitch_p75  rad
 7-9   speed_yaw_mean, speed_yaw_p25, speed_yaw_p75  rad/s, signed
 10-12 speed_pitch_mean, speed_pitch_p25, speed_pitch_p75
 13-14 max_angle_yaw, max_angle_pitch                rad from the first sample
 15    area_explored                                 percent of the sphere

Yaw statistics are taken on the chunk's yaw unwrapped from its first sample;
only the yaw mean is wrapped back into [-pi, pi). Percentiles use linear
interpolation between order statistics.
"""
import numpy as np
from joblib import Parallel, delayed

from ..exception import DimensionMismatchError
from ..geometry import ViewportSpec
from ..geometry import axis_rates
from ..geometry import sphere_coverage
from ..geometry import unwrap_yaw
from ..geometry import wrap_angle

FEATURE_NAMES = (
    'pos_yaw_mean', 'pos_yaw_p25', 'pos_yaw_p75',
    'pos_pitch_mean', 'pos_pitch_p25', 'pos_pitch_p75',
    'speed_yaw_mean', 'speed_yaw_p25', 'speed_yaw_p75',
    'speed_pitch_mean', 'speed_pitch_p25', 'speed_pitch_p75',
    'max_angle_yaw', 'max_angle_pitch',
    'area_explored',
)
N_FEATURES = len(FEATURE_NAMES)


class ChunkFeatures(object):
    """
    Named 15-dimensional feature vector of one trace chunk.
    """

    def __init__(self, values, key=None):
        values = np.asarray(values, dtype=np.float64)
        if values.shape != (N_FEATURES,):
            raise DimensionMismatchError("expected {} features, got shape {}".format(N_FEATURES, values.shape))
        self.values = values
        self.key = key

    def __getattr__(self, item):
        try:
            idx = FEATURE_NAMES.index(item)
        except ValueError:
            raise AttributeError("Unknown feature `{}`".format(item))
        return self.values[idx]

    def __getstate__(self):
        return self.__dict__

    def __setstate__(self, state):
        self.__dict__.update(state)

    def as_array(self):
        return self.values.copy()

    def to_dict(self):
        return dict(zip(FEATURE_NAMES, self.values.tolist()))

    def __repr__(self):
        return 'ChunkFeatures({})'.format(', '.join(
            '{}={:.4f}'.format(name, value) for name, value in zip(FEATURE_NAMES, self.values)))


def _stats(values):
    p25, p75 = np.percentile(values, [25, 75])
    return float(np.mean(values)), float(p25), float(p75)


def extract_f1(chunk, viewport=None, grid=1.0):
    """
    :type chunk: TraceChunk
    :param viewport: ViewportSpec used for the explored area
    :param grid: coverage grid resolution in degrees
    :rtype: ChunkFeatures
    """
    viewport = ViewportSpec() if viewport is None else viewport
    yaw = unwrap_yaw(chunk.yaw)
    pitch = np.asarray(chunk.pitch, dtype=np.float64)
    yaw_rate, pitch_rate = axis_rates(chunk)

    yaw_mean, yaw_p25, yaw_p75 = _stats(yaw)
    values = [wrap_angle(yaw_mean), yaw_p25, yaw_p75]
    values.extend(_stats(pitch))
    values.extend(_stats(yaw_rate))
    values.extend(_stats(pitch_rate))
    values.append(float(np.max(np.abs(yaw - yaw[0]))))
    values.append(float(np.max(np.abs(pitch - pitch[0]))))
    values.append(sphere_coverage(chunk, viewport, grid))
    return ChunkFeatures(values, key=getattr(chunk, 'key', None))


def extract_all(chunks, viewport=None, grid=1.0, n_jobs=1):
    """
    Features of many chunks; extraction is independent per chunk.
    :return: list of ChunkFeatures in the order of `chunks`
    """
    return Parallel(n_jobs=n_jobs)(delayed(extract_f1)(chunk, viewport, grid) for chunk in chunks)
