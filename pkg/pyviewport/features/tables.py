"""
Feature tables on disk.

f1 table: `video_id,chunk_id,user_id,f1..f15`, columns in FEATURE_NAMES order.
f2 table: `video_id,chunk_id,n_users,m0..m{M-1}`.
"""
import numpy as np
import pandas as pd

from ..exception import DimensionMismatchError
from .video_features import VideoChunkFeatures
from .viewport_features import N_FEATURES

F1_COLUMNS = ['f{}'.format(n) for n in range(1, N_FEATURES + 1)]
FLOAT_FORMAT = '%.17g'


def write_f1_table(features, path):
    """
    :param features: ChunkFeatures with their (video, chunk, user) key set
    """
    keys = np.array([feature.key for feature in features], dtype=int).reshape(-1, 3)
    frame = pd.DataFrame(keys, columns=['video_id', 'chunk_id', 'user_id'])
    values = np.array([feature.values for feature in features]).reshape(-1, N_FEATURES)
    frame = pd.concat([frame, pd.DataFrame(values, columns=F1_COLUMNS)], axis=1)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)


def read_f1_table(path):
    """
    :return: (list of (video, chunk, user) keys, (N, 15) feature matrix)
    """
    frame = pd.read_csv(path, float_precision='round_trip')
    missing = [column for column in F1_COLUMNS if column not in frame.columns]
    if missing:
        raise DimensionMismatchError("feature table {} misses columns {}".format(path, missing))
    keys = [tuple(int(v) for v in row) for row in frame[['video_id', 'chunk_id', 'user_id']].to_numpy()]
    return keys, frame[F1_COLUMNS].to_numpy(dtype=np.float64)


def write_f2_table(f2_table, path):
    n_clusters = len(f2_table[0]) if f2_table else 0
    columns = ['m{}'.format(m) for m in range(n_clusters)]
    frame = pd.DataFrame({
        'video_id': [f2.video_id for f2 in f2_table],
        'chunk_id': [f2.chunk_id for f2 in f2_table],
        'n_users': [f2.n_users for f2 in f2_table],
    })
    values = np.array([f2.fractions for f2 in f2_table]).reshape(-1, n_clusters)
    frame = pd.concat([frame, pd.DataFrame(values, columns=columns)], axis=1)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)


def read_f2_table(path):
    frame = pd.read_csv(path, float_precision='round_trip')
    columns = [column for column in frame.columns if column.startswith('m')]
    values = frame[columns].to_numpy(dtype=np.float64)
    return [VideoChunkFeatures(row.video_id, row.chunk_id, values[n], row.n_users)
            for n, row in enumerate(frame.itertuples())]
