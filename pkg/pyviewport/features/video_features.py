import numpy as np

from ..exception import DimensionMismatchError
from ..exception import InsufficientDataError
from ..exception import ClusteringError


class VideoChunkFeatures(object):
    """
    Share of the users of video chunk (i, k) falling into each of the M
    behaviour clusters.
    """

    def __init__(self, video_id, chunk_id, fractions, n_users):
        self.video_id = int(video_id)
        self.chunk_id = int(chunk_id)
        self.fractions = np.asarray(fractions, dtype=np.float64)
        self.n_users = int(n_users)

    @property
    def key(self):
        return self.video_id, self.chunk_id

    @property
    def counts(self):
        return np.rint(self.fractions * self.n_users).astype(int)

    def __len__(self):
        return len(self.fractions)

    def __repr__(self):
        return 'VideoChunkFeatures(video={}, chunk={}, n={}, fractions={})'.format(
            self.video_id, self.chunk_id, self.n_users, np.round(self.fractions, 3).tolist())


def extract_f2(assignments, video_id, chunk_id, n_clusters, n_users=None):
    """
    Population vector of one video chunk: fraction of its users' trace chunks
    in every stage-1 cluster. The denominator is the number of users of the
    video with a trace chunk at `chunk_id`.

    :param assignments: mapping (video_id, chunk_id, user_id) -> cluster m
    :param n_clusters: M
    :param n_users: expected user count, checked against the assignments
    :rtype: VideoChunkFeatures
    """
    labels = [m for (i, k, _j), m in assignments.items() if i == video_id and k == chunk_id]
    return _population_vector(video_id, chunk_id, labels, n_clusters, n_users)


def _population_vector(video_id, chunk_id, labels, n_clusters, n_users=None):
    if not labels:
        raise InsufficientDataError("video chunk ({}, {}) has no users".format(video_id, chunk_id))
    if n_users is not None and n_users != len(labels):
        raise DimensionMismatchError("video chunk ({}, {}) has {} assigned users, expected {}".format(
            video_id, chunk_id, len(labels), n_users))
    labels = np.asarray(labels, dtype=int)
    if labels.min() < 0 or labels.max() >= n_clusters:
        raise ClusteringError("video chunk ({}, {}) has labels outside [0, {})".format(
            video_id, chunk_id, n_clusters))
    counts = np.bincount(labels, minlength=n_clusters)
    return VideoChunkFeatures(video_id, chunk_id, counts / float(len(labels)), len(labels))


def build_f2_table(assignments, n_clusters):
    """
    Population vectors of every video chunk present in the assignments.
    :return: list of VideoChunkFeatures sorted by (video, chunk)
    """
    groups = {}
    for (i, k, _j), m in assignments.items():
        groups.setdefault((i, k), []).append(m)
    return [_population_vector(i, k, labels, n_clusters) for (i, k), labels in sorted(groups.items())]


def count_behaviors(f2, n_users=None, min_users=2):
    """
    Number of behaviour clusters shared by at least `min_users` users of the
    video chunk.
    :type f2: VideoChunkFeatures
    """
    n_users = f2.n_users if n_users is None else n_users
    counts = np.rint(f2.fractions * n_users).astype(int)
    return int(np.sum(counts >= min_users))
