"""
Fitted K-Means model of either clustering stage and its text serialization.

The model file is YAML. Floating point values are written with 17
significant digits so a reloaded model reproduces every assignment; rows of
the assignment table are `key..., label, outlier, distance`.
"""
import numpy as np
import yaml

from ..custom_logging.logger import logger
from ..exception import DimensionMismatchError
from ..exception import ViewportException

STAGES = ('viewport', 'video')

# standard deviations below this count as a constant feature
_CONSTANT_STD = 1e-12


def _fmt(value):
    return '%.17g' % value


def _fmt_row(values):
    return ' '.join(_fmt(value) for value in values)


def _parse_row(text):
    return [float(value) for value in text.split()]


def standardization(points, feature_names=None, warn_constant=True):
    """
    Column means and standard deviations for z-scoring. Constant columns get
    a standard deviation of 1.
    :return: (means, stds)
    """
    points = np.asarray(points, dtype=np.float64)
    means = points.mean(axis=0)
    stds = points.std(axis=0)
    constant = np.flatnonzero(stds < _CONSTANT_STD)
    if len(constant) > 0:
        if warn_constant:
            names = [feature_names[c] if feature_names else str(c) for c in constant]
            logger.warning(f"Constant feature columns {', '.join(names)} are left unscaled")
        stds[constant] = 1.0
    return means, stds


class ClusterModel(object):
    """
    Centroids live in the standardized feature space; `feature_means` and
    `feature_stds` map raw features into it.
    """

    def __init__(self, stage, centroids, feature_means, feature_stds, seed,
                 keys=None, labels=None, distances=None, outlier_flags=None,
                 inertia=None, n_iter=None, outlier_sigma=None):
        if stage not in STAGES:
            raise ViewportException("unknown clustering stage '{}'".format(stage))
        self.stage = stage
        self.centroids = np.asarray(centroids, dtype=np.float64)
        self.feature_means = np.asarray(feature_means, dtype=np.float64)
        self.feature_stds = np.asarray(feature_stds, dtype=np.float64)
        self.seed = int(seed)
        n_points = 0 if labels is None else len(labels)
        self.keys = [tuple(key) for key in keys] if keys is not None else [(n,) for n in range(n_points)]
        self.labels = np.zeros(0, dtype=int) if labels is None else np.asarray(labels, dtype=int)
        self.distances = np.zeros(n_points) if distances is None else np.asarray(distances, dtype=np.float64)
        self.outlier_flags = (np.zeros(n_points, dtype=bool) if outlier_flags is None
                              else np.asarray(outlier_flags, dtype=bool))
        self.inertia = inertia
        self.n_iter = n_iter
        self.outlier_sigma = outlier_sigma
        if len(self.keys) != len(self.labels):
            raise DimensionMismatchError("{} keys for {} assignments".format(len(self.keys), len(self.labels)))

    @property
    def k(self):
        return len(self.centroids)

    @property
    def dimension(self):
        return self.centroids.shape[1]

    @property
    def assignments(self):
        """
        key -> cluster index
        """
        return {key: int(label) for key, label in zip(self.keys, self.labels)}

    @property
    def outlier_percentage(self):
        if len(self.labels) == 0:
            return 0.0
        return 100.0 * float(np.mean(self.outlier_flags))

    def cluster_sizes(self):
        return np.bincount(self.labels, minlength=self.k)

    def members(self, cluster, include_outliers=False):
        mask = self.labels == cluster
        if not include_outliers:
            mask &= ~self.outlier_flags
        return [key for key, keep in zip(self.keys, mask) if keep]

    def transform(self, points):
        """
        Raw features into the standardized space of the centroids.
        """
        points = np.asarray(points, dtype=np.float64)
        if points.shape[-1] != len(self.feature_means):
            raise DimensionMismatchError("expected {} features, got {}".format(
                len(self.feature_means), points.shape[-1]))
        return (points - self.feature_means) / self.feature_stds

    def to_dict(self):
        rows = []
        for key, label, outlier, distance in zip(self.keys, self.labels, self.outlier_flags, self.distances):
            rows.append(' '.join([str(v) for v in key] + [str(int(label)), str(int(outlier)), _fmt(distance)]))
        return {
            'stage': self.stage,
            'k': self.k,
            'seed': self.seed,
            'inertia': None if self.inertia is None else _fmt(self.inertia),
            'n_iter': self.n_iter,
            'outlier_sigma': None if self.outlier_sigma is None else _fmt(self.outlier_sigma),
            'feature_means': _fmt_row(self.feature_means),
            'feature_stds': _fmt_row(self.feature_stds),
            'centroids': [_fmt_row(centroid) for centroid in self.centroids],
            'assignments': rows,
        }

    @classmethod
    def from_dict(cls, data):
        rows = [row.split() for row in data.get('assignments') or []]
        key_width = len(rows[0]) - 3 if rows else 0
        return cls(
            stage=data['stage'],
            centroids=np.array([_parse_row(row) for row in data['centroids']]),
            feature_means=_parse_row(data['feature_means']),
            feature_stds=_parse_row(data['feature_stds']),
            seed=data['seed'],
            keys=[tuple(int(v) for v in row[:key_width]) for row in rows],
            labels=[int(row[key_width]) for row in rows],
            outlier_flags=[row[key_width + 1] == '1' for row in rows],
            distances=[float(row[key_width + 2]) for row in rows],
            inertia=None if data.get('inertia') is None else float(data['inertia']),
            n_iter=data.get('n_iter'),
            outlier_sigma=None if data.get('outlier_sigma') is None else float(data['outlier_sigma']),
        )

    def save(self, path):
        with open(path, 'w', newline='\n') as model_file:
            yaml.safe_dump(self.to_dict(), model_file, sort_keys=True, default_flow_style=False, width=4096)

    @classmethod
    def load(cls, path):
        with open(path) as model_file:
            return cls.from_dict(yaml.safe_load(model_file))

    def __repr__(self):
        return 'ClusterModel(stage={}, k={}, points={}, outliers={:.2f}%)'.format(
            self.stage, self.k, len(self.labels), self.outlier_percentage)
