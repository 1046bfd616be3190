"""
Pairwise similarity of trace chunks and of video chunks.
"""
import numpy as np
from joblib import Parallel, delayed
from scipy.spatial.distance import pdist
from scipy.spatial.distance import squareform

from ..exception import DimensionMismatchError
from ..exception import InsufficientDataError
from ..geometry import ViewportSpec
from ..geometry import geodesic
from ..geometry import mean_angular_speed
from ..geometry import overlap_proxy
from ..geometry import sphere_coverage
from ..geometry import trace_vpo


class PairwiseMetrics(object):
    """
    vpo in [0, 1], speed_diff in rad/s, explore_diff in percentage points.
    """
    __slots__ = ('vpo', 'speed_diff', 'explore_diff')

    def __init__(self, vpo, speed_diff, explore_diff):
        self.vpo = float(vpo)
        self.speed_diff = float(speed_diff)
        self.explore_diff = float(explore_diff)

    def __iter__(self):
        return iter((self.vpo, self.speed_diff, self.explore_diff))

    def __eq__(self, other):
        return tuple(self) == tuple(other)

    def __repr__(self):
        return 'PairwiseMetrics(vpo={:.4f}, speed_diff={:.4f}, explore_diff={:.4f})'.format(*self)


def pairwise_metrics(a, b, viewport=None, grid=1.0):
    """
    :type a: TraceChunk
    :type b: TraceChunk
    :rtype: PairwiseMetrics
    """
    vpo = trace_vpo(a, b, viewport)
    speed_diff = abs(mean_angular_speed(a) - mean_angular_speed(b))
    explore_diff = abs(sphere_coverage(a, viewport, grid) - sphere_coverage(b, viewport, grid))
    return PairwiseMetrics(vpo, speed_diff, explore_diff)


def _chunk_summary(chunk, viewport, grid):
    return mean_angular_speed(chunk), sphere_coverage(chunk, viewport, grid)


class ChunkMetricTable(object):
    """
    Per-chunk quantities behind the pairwise metrics, stacked so that many
    pairs are evaluated at once.
    """

    def __init__(self, chunks, viewport=None, grid=1.0, coverage=None, n_jobs=1):
        if len(chunks) == 0:
            raise InsufficientDataError("no chunks to compare")
        lengths = {len(chunk.yaw) for chunk in chunks}
        if len(lengths) != 1:
            raise DimensionMismatchError("chunks have different sample counts: {}".format(sorted(lengths)))
        self.viewport = ViewportSpec() if viewport is None else viewport
        self.yaw = np.array([chunk.yaw for chunk in chunks], dtype=np.float64)
        self.pitch = np.array([chunk.pitch for chunk in chunks], dtype=np.float64)
        summaries = Parallel(n_jobs=n_jobs)(
            delayed(_chunk_summary)(chunk, self.viewport, grid) for chunk in chunks)
        self.speed = np.array([speed for speed, _ in summaries])
        self.coverage = (np.array([area for _, area in summaries]) if coverage is None
                         else np.asarray(coverage, dtype=np.float64))

    def __len__(self):
        return len(self.speed)

    def pair_metrics(self, first, second, batch_size=100000):
        """
        Metrics of the pairs (first[n], second[n]).
        :return: (vpo, speed_diff, explore_diff) arrays
        """
        first = np.asarray(first, dtype=int)
        second = np.asarray(second, dtype=int)
        vpo = np.empty(len(first))
        for start in range(0, len(first), batch_size):
            a = first[start:start + batch_size]
            b = second[start:start + batch_size]
            distances = geodesic(self.yaw[a], self.pitch[a], self.yaw[b], self.pitch[b])
            vpo[start:start + batch_size] = np.mean(overlap_proxy(distances, self.viewport), axis=1)
        speed_diff = np.abs(self.speed[first] - self.speed[second])
        explore_diff = np.abs(self.coverage[first] - self.coverage[second])
        return vpo, speed_diff, explore_diff


def _fractions(value):
    return np.asarray(getattr(value, 'fractions', value), dtype=np.float64)


def category_distance(u, v):
    """
    Euclidean distance between two population vectors.
    :param u: VideoChunkFeatures or fraction vector
    :param v: VideoChunkFeatures or fraction vector
    """
    u = _fractions(u)
    v = _fractions(v)
    if u.shape != v.shape:
        raise DimensionMismatchError("population vectors of length {} and {}".format(len(u), len(v)))
    return float(np.linalg.norm(u - v))


def category_distance_matrix(f2_table):
    """
    All pairwise category distances of a list of VideoChunkFeatures.
    """
    fractions = np.array([_fractions(f2) for f2 in f2_table])
    return squareform(pdist(fractions, 'euclidean'))
