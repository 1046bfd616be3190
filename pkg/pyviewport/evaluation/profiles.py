import numpy as np
import pandas as pd

from ..exception import DimensionMismatchError
from ..features import FEATURE_NAMES


def _aligned(model, keys, features):
    features = np.asarray(features, dtype=np.float64)
    if len(keys) != len(features):
        raise DimensionMismatchError("{} keys for {} feature rows".format(len(keys), len(features)))
    row_of = {tuple(key): row for row, key in enumerate(keys)}
    present = [idx for idx, key in enumerate(model.keys) if key in row_of]
    rows = [row_of[model.keys[idx]] for idx in present]
    return features[rows], model.labels[present], model.outlier_flags[present]


def cluster_profiles(model, keys, features, include_outliers=False):
    """
    Mean, 25th and 75th percentile of every behavioural feature inside every
    stage-1 cluster.

    :param keys: (video, chunk, user) of every feature row
    :param features: N x 15 feature matrix
    :return: DataFrame with one row per cluster and feature
    """
    matrix, labels, outliers = _aligned(model, keys, features)
    if not include_outliers:
        matrix, labels = matrix[~outliers], labels[~outliers]

    rows = []
    for cluster in range(model.k):
        members = matrix[labels == cluster]
        for column, name in enumerate(FEATURE_NAMES):
            if len(members) == 0:
                mean = p25 = p75 = np.nan
            else:
                mean = float(np.mean(members[:, column]))
                p25, p75 = np.percentile(members[:, column], [25, 75])
            rows.append({'cluster': cluster, 'size': len(members), 'feature': name,
                         'mean': mean, 'p25': float(p25), 'p75': float(p75)})
    return pd.DataFrame(rows, columns=['cluster', 'size', 'feature', 'mean', 'p25', 'p75'])


def cluster_histograms(model, keys, features, bins=20):
    """
    Histogram of every feature in every cluster on bins shared by all
    clusters.
    :return: DataFrame cluster, feature, bin_low, bin_high, count
    """
    matrix, labels, _ = _aligned(model, keys, features)
    rows = []
    for column, name in enumerate(FEATURE_NAMES):
        values = matrix[:, column]
        low, high = (float(values.min()), float(values.max())) if len(values) else (0.0, 1.0)
        if high <= low:
            high = low + 1.0
        edges = np.linspace(low, high, bins + 1)
        for cluster in range(model.k):
            counts = np.histogram(values[labels == cluster], bins=edges)[0]
            for b in range(bins):
                rows.append({'cluster': cluster, 'feature': name, 'bin_low': edges[b],
                             'bin_high': edges[b + 1], 'count': int(counts[b])})
    return pd.DataFrame(rows, columns=['cluster', 'feature', 'bin_low', 'bin_high', 'count'])


def video_feature_distribution(keys, features):
    """
    Per video and chunk, the mean yaw position and the mean maximum yaw
    movement over the users.
    """
    features = np.asarray(features, dtype=np.float64)
    frame = pd.DataFrame({
        'video_id': [key[0] for key in keys],
        'chunk_id': [key[1] for key in keys],
        'pos_yaw_mean': features[:, FEATURE_NAMES.index('pos_yaw_mean')],
        'max_angle_yaw': features[:, FEATURE_NAMES.index('max_angle_yaw')],
    })
    grouped = frame.groupby(['video_id', 'chunk_id'], sort=True)
    return grouped.agg(users=('pos_yaw_mean', 'size'),
                       pos_yaw_mean=('pos_yaw_mean', 'mean'),
                       max_angle_yaw=('max_angle_yaw', 'mean')).reset_index()
