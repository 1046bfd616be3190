"""
Four-way comparison of the feature-based K-Means clustering against the
reference algorithms, run separately on the trace chunks of every video
chunk. K-Means gets as many clusters as the clique clustering found.
"""
import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from ..clustering import Partition
from ..clustering import baseline_dbscan
from ..clustering import baseline_spherical
from ..clustering import baseline_trajectory
from ..clustering import kmeans_fit
from ..clustering.baselines import DEFAULT_DBSCAN_EPS
from ..clustering.baselines import DEFAULT_DBSCAN_MIN_PTS
from ..clustering.baselines import DEFAULT_SPHERICAL_THRESHOLD
from ..clustering.baselines import DEFAULT_TRAJECTORY_K_MAX
from ..clustering.baselines import DEFAULT_TRAJECTORY_SIGMA
from ..features import extract_f1
from .metrics import ChunkMetricTable

ALGORITHMS = ('proposed', 'spherical', 'trajectory', 'dbscan')
COMPARISON_COLUMNS = ['video_id', 'chunk_id', 'algorithm', 'n_chunks', 'n_clusters', 'n_noise',
                      'within_vpo', 'within_speed_diff', 'within_explore_diff']


class BaselineParameters(object):

    def __init__(self, spherical_threshold=DEFAULT_SPHERICAL_THRESHOLD, trajectory_sigma=DEFAULT_TRAJECTORY_SIGMA,
                 trajectory_k_max=DEFAULT_TRAJECTORY_K_MAX, dbscan_eps=DEFAULT_DBSCAN_EPS,
                 dbscan_min_pts=DEFAULT_DBSCAN_MIN_PTS, seed=0, n_init=5):
        self.spherical_threshold = spherical_threshold
        self.trajectory_sigma = trajectory_sigma
        self.trajectory_k_max = trajectory_k_max
        self.dbscan_eps = dbscan_eps
        self.dbscan_min_pts = dbscan_min_pts
        self.seed = seed
        self.n_init = n_init


def proposed_partition(chunks, k, seed=0, n_init=5, viewport=None, grid=1.0, features=None):
    """
    K-Means on the behavioural features of the chunks of one video chunk.
    """
    if features is None:
        features = np.array([extract_f1(chunk, viewport, grid).values for chunk in chunks])
    model = kmeans_fit(features, k, seed=seed, n_init=n_init, warn_constant=False)
    return Partition(model.labels, 'proposed')


def within_metrics(partition, table):
    """
    Mean pairwise metrics over the pairs sharing a cluster; noise chunks are
    left out. None when no pair shares a cluster.
    """
    labels = partition.labels
    first, second = np.triu_indices(len(labels), k=1)
    keep = (labels[first] == labels[second]) & (labels[first] >= 0)
    if not keep.any():
        return None, None, None
    values = table.pair_metrics(first[keep], second[keep])
    return tuple(float(np.mean(metric)) for metric in values)


def compare_video_chunk(chunks, params=None, viewport=None, grid=1.0):
    """
    :param chunks: TraceChunks of one video chunk, all of equal length
    :type params: BaselineParameters
    :return: list of row dicts, one per algorithm
    """
    params = BaselineParameters() if params is None else params
    table = ChunkMetricTable(chunks, viewport, grid)
    spherical = baseline_spherical(chunks, params.spherical_threshold)
    partitions = {
        'proposed': proposed_partition(chunks, spherical.n_clusters, params.seed, params.n_init, viewport, grid),
        'spherical': spherical,
        'trajectory': (baseline_trajectory(chunks, params.trajectory_k_max, params.trajectory_sigma, params.seed)
                       if len(chunks) >= 2 else Partition(np.zeros(len(chunks), dtype=int), 'trajectory')),
        'dbscan': baseline_dbscan(chunks, params.dbscan_eps, params.dbscan_min_pts),
    }
    video_id, chunk_id = chunks[0].video_chunk
    rows = []
    for algorithm in ALGORITHMS:
        partition = partitions[algorithm]
        vpo, speed_diff, explore_diff = within_metrics(partition, table)
        rows.append({
            'video_id': video_id, 'chunk_id': chunk_id, 'algorithm': algorithm,
            'n_chunks': len(chunks), 'n_clusters': partition.n_clusters, 'n_noise': partition.n_noise,
            'within_vpo': vpo, 'within_speed_diff': speed_diff, 'within_explore_diff': explore_diff,
        })
    return rows


def compare_baselines(groups, params=None, videos=None, viewport=None, grid=1.0, n_jobs=1):
    """
    Runs the comparison on every video chunk.

    :param groups: mapping (video_id, chunk_id) -> TraceChunks
    :param videos: optional collection of video ids to restrict to
    :return: DataFrame with one row per video chunk and algorithm
    """
    selected = [members for (video_id, _), members in sorted(groups.items())
                if videos is None or video_id in videos]
    results = Parallel(n_jobs=n_jobs)(
        delayed(compare_video_chunk)(members, params, viewport, grid) for members in selected)
    rows = [row for result in results for row in result]
    return pd.DataFrame(rows, columns=COMPARISON_COLUMNS)


def summarize_comparison(frame):
    """
    Per algorithm means over all video chunks, NaN entries skipped.
    """
    values = COMPARISON_COLUMNS[3:]
    numeric = frame[values].astype(float)
    numeric['algorithm'] = frame['algorithm']
    summary = numeric.groupby('algorithm', sort=False)[values].mean()
    return summary.reindex([a for a in ALGORITHMS if a in summary.index]).reset_index()
