"""
Within-cluster versus cross-cluster similarity of a fitted model.

A pair is `within` when both members carry the same label and `cross`
otherwise. When there are more pairs than `sample_cap`, a seeded uniform
sample of `sample_cap` pairs replaces the full enumeration.
"""
import numpy as np
import pandas as pd

from ..exception import InsufficientDataError
from .metrics import ChunkMetricTable

DEFAULT_SAMPLE_CAP = 1000000

VIEWPORT_METRICS = ('vpo', 'speed_diff', 'explore_diff')
VIDEO_METRICS = ('S',)


def sample_pairs(n_points, sample_cap=DEFAULT_SAMPLE_CAP, seed=0):
    """
    Index pairs (first < second) over n_points. All pairs when they fit in
    `sample_cap`, otherwise `sample_cap` pairs drawn uniformly with a
    generator seeded by `seed`.
    """
    n_pairs = n_points * (n_points - 1) // 2
    if n_pairs <= sample_cap:
        first, second = np.triu_indices(n_points, k=1)
        return first, second
    rng = np.random.default_rng(seed)
    first = rng.integers(n_points, size=int(sample_cap))
    second = rng.integers(n_points - 1, size=int(sample_cap))
    second += second >= first
    return np.minimum(first, second), np.maximum(first, second)


def _mean(values):
    return float(np.mean(values)) if len(values) > 0 else None


class ClusterReport(object):
    """
    Aggregate and per-cluster within/cross means of every metric. A mean over
    an empty pair set is None.
    """

    def __init__(self, stage, metrics, aggregate, per_cluster, sizes, n_pairs, include_outliers=False):
        self.stage = stage
        self.metrics = tuple(metrics)
        self.aggregate = aggregate
        self.per_cluster = per_cluster
        self.sizes = [int(size) for size in sizes]
        self.n_pairs = int(n_pairs)
        self.include_outliers = include_outliers

    def __getattr__(self, item):
        aggregate = self.__dict__.get('aggregate')
        if aggregate is not None and item in aggregate:
            return aggregate[item]
        raise AttributeError(item)

    def __getstate__(self):
        return self.__dict__

    def __setstate__(self, state):
        self.__dict__.update(state)

    def to_frame(self):
        """
        One row per cluster plus a final `all` row.
        """
        rows = []
        for cluster, (size, values) in enumerate(zip(self.sizes, self.per_cluster)):
            rows.append(dict(cluster=str(cluster), size=size, **values))
        rows.append(dict(cluster='all', size=sum(self.sizes), **self.aggregate))
        columns = ['cluster', 'size'] + ['{}_{}'.format(side, metric)
                                         for metric in self.metrics for side in ('within', 'cross')]
        return pd.DataFrame(rows, columns=columns)

    def summary(self):
        return {
            'stage': self.stage,
            'include_outliers': self.include_outliers,
            'pairs': self.n_pairs,
            'clusters': len(self.sizes),
            **{key: value for key, value in self.aggregate.items()},
        }


def _build_report(stage, metrics, labels, first, second, values, n_clusters, include_outliers):
    same = labels[first] == labels[second]
    aggregate = {}
    for metric, metric_values in zip(metrics, values):
        aggregate['within_' + metric] = _mean(metric_values[same])
        aggregate['cross_' + metric] = _mean(metric_values[~same])

    per_cluster = []
    for cluster in range(n_clusters):
        in_first = labels[first] == cluster
        in_second = labels[second] == cluster
        within = in_first & in_second
        cross = in_first ^ in_second
        entry = {}
        for metric, metric_values in zip(metrics, values):
            entry['within_' + metric] = _mean(metric_values[within])
            entry['cross_' + metric] = _mean(metric_values[cross])
        per_cluster.append(entry)
    sizes = np.bincount(labels, minlength=n_clusters)
    return ClusterReport(stage, metrics, aggregate, per_cluster, sizes, len(first), include_outliers)


def _selected(model, include_outliers):
    keep = np.ones(len(model.labels), dtype=bool) if include_outliers else ~model.outlier_flags
    return np.flatnonzero(keep)


def cluster_similarity_report(model, chunks, sample_cap=DEFAULT_SAMPLE_CAP, seed=0, include_outliers=False,
                              viewport=None, grid=1.0, coverage=None, n_jobs=1):
    """
    Pairwise VPO, speed difference and exploration difference within and
    across the clusters of a stage-1 model.

    :type model: ClusterModel
    :param chunks: the TraceChunks the model was fitted on, matched by key
    :param coverage: optional mapping key -> explored area, reused instead of recomputing
    :rtype: ClusterReport
    """
    by_key = {chunk.key: chunk for chunk in chunks}
    selected = [idx for idx in _selected(model, include_outliers) if model.keys[idx] in by_key]
    if not selected:
        raise InsufficientDataError("no chunk of the model is available for the similarity report")
    keys = [model.keys[idx] for idx in selected]
    labels = model.labels[selected]
    areas = None if coverage is None else [coverage[key] for key in keys]
    table = ChunkMetricTable([by_key[key] for key in keys], viewport, grid, areas, n_jobs)

    first, second = sample_pairs(len(keys), sample_cap, seed)
    values = table.pair_metrics(first, second)
    return _build_report('viewport', VIEWPORT_METRICS, labels, first, second, values, model.k, include_outliers)


def category_report(model, f2_table, sample_cap=DEFAULT_SAMPLE_CAP, seed=0, include_outliers=True):
    """
    Category distance within and across the categories of a stage-2 model.

    :type model: ClusterModel
    :param f2_table: VideoChunkFeatures of the video chunks, matched by key
    :rtype: ClusterReport
    """
    by_key = {f2.key: f2 for f2 in f2_table}
    selected = [idx for idx in _selected(model, include_outliers) if model.keys[idx] in by_key]
    if not selected:
        raise InsufficientDataError("no video chunk of the model is in the population table")
    fractions = np.array([by_key[model.keys[idx]].fractions for idx in selected])
    labels = model.labels[selected]

    first, second = sample_pairs(len(selected), sample_cap, seed)
    distances = np.linalg.norm(fractions[first] - fractions[second], axis=1)
    return _build_report('video', VIDEO_METRICS, labels, first, second, (distances,), model.k,
                         include_outliers)
