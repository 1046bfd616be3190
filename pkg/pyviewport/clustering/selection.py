"""
Choice of the number of clusters by a Davies-Bouldin sweep, and outlier
flagging of fitted models.
"""
import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from sklearn.metrics import davies_bouldin_score

from ..custom_logging.logger import logger
from ..exception import ConfigurationError
from ..exception import InsufficientDataError
from .kmeans import DEFAULT_MAX_ITER
from .kmeans import DEFAULT_N_INIT
from .kmeans import DEFAULT_TOL
from .kmeans import kmeans_fit

DEFAULT_OUTLIER_SIGMA = 3.0
DEFAULT_STABILITY_TOLERANCE = 0.10


def flag_outliers(model, n_sigma=DEFAULT_OUTLIER_SIGMA):
    """
    Marks as outliers the points whose distance to their centroid exceeds the
    mean plus `n_sigma` standard deviations of the distances in their cluster.
    Updates the model in place and returns it.
    :type model: ClusterModel
    """
    flags = np.zeros(len(model.labels), dtype=bool)
    for cluster in range(model.k):
        members = model.labels == cluster
        if not members.any():
            continue
        distances = model.distances[members]
        mean = distances.mean()
        threshold = mean + n_sigma * distances.std() + 1e-9 * max(1.0, mean)
        flags[members] = distances > threshold
    model.outlier_flags = flags
    model.outlier_sigma = n_sigma
    return model


def davies_bouldin(points, labels):
    """
    Davies-Bouldin index of a labelling; infinite when it has fewer than two
    clusters or only singletons.
    """
    n_labels = len(np.unique(labels))
    if n_labels < 2 or n_labels >= len(points):
        return float('inf')
    return float(davies_bouldin_score(points, labels))


def _local_minima(scores):
    minima = []
    for idx, score in enumerate(scores):
        if not np.isfinite(score):
            continue
        left = scores[idx - 1] if idx > 0 else np.inf
        right = scores[idx + 1] if idx + 1 < len(scores) else np.inf
        if score <= left and score <= right:
            minima.append(idx)
    return minima


def choose_stable_k(k_values, scores, outlier_percentages, tolerance=DEFAULT_STABILITY_TOLERANCE):
    """
    Picks K from a DB sweep.

    Local minima whose score is within `tolerance` of the global minimum are
    candidates. Consecutive candidates tying within `tolerance` form a plateau,
    which is stable and stands for its smallest K. A lone candidate is stable
    when its existing neighbours in the sweep score within `tolerance` of it.
    Stable candidates are preferred; the lower outlier percentage, then the
    smaller K, decides between the remaining ones.
    """
    scores = np.asarray(scores, dtype=np.float64)
    finite = np.isfinite(scores)
    if not finite.any():
        return int(k_values[0])
    best = np.min(scores[finite])
    global_min = int(np.flatnonzero(scores == best)[0])

    candidates = [idx for idx in _local_minima(scores) if scores[idx] <= best + tolerance * abs(best)]
    if not candidates:
        return int(k_values[global_min])

    def ties(first, second):
        a, b = scores[first], scores[second]
        return bool(np.isfinite(a) and np.isfinite(b) and abs(a - b) <= tolerance * max(abs(a), abs(b)))

    plateaus = []
    for idx in candidates:
        if plateaus and plateaus[-1][-1] == idx - 1 and ties(idx - 1, idx):
            plateaus[-1].append(idx)
        else:
            plateaus.append([idx])

    def stable(run):
        if len(run) > 1:
            return True
        idx = run[0]
        neighbours = [n for n in (idx - 1, idx + 1) if 0 <= n < len(scores)]
        return all(ties(n, idx) for n in neighbours)

    preferred = [run[0] for run in plateaus if stable(run)] or [run[0] for run in plateaus]
    chosen = min(preferred, key=lambda idx: (outlier_percentages[idx], k_values[idx]))
    return int(k_values[chosen])


class DbSweepResult(object):
    """
    Davies-Bouldin score and outlier percentage of every K tried, the chosen
    K and the fitted models.
    """

    def __init__(self, k_values, scores, outlier_percentages, chosen_k, models=None):
        self.k_values = [int(k) for k in k_values]
        self.scores = [float(score) for score in scores]
        self.outlier_percentages = [float(p) for p in outlier_percentages]
        self.chosen_k = int(chosen_k)
        self.models = dict(models or {})

    @property
    def chosen_model(self):
        return self.models.get(self.chosen_k)

    def score(self, k):
        return self.scores[self.k_values.index(k)]

    def to_frame(self):
        return pd.DataFrame({
            'k': self.k_values,
            'db_score': self.scores,
            'outlier_percentage': self.outlier_percentages,
            'chosen': [int(k == self.chosen_k) for k in self.k_values],
        })

    def __repr__(self):
        return 'DbSweepResult(k={}..{}, chosen={})'.format(self.k_values[0], self.k_values[-1], self.chosen_k)


def _fit_and_score(points, k, seed, max_iter, tol, n_init, keys, stage, standardize, outlier_sigma,
                   warn_constant):
    model = kmeans_fit(points, k, seed=seed, max_iter=max_iter, tol=tol, n_init=n_init,
                       keys=keys, stage=stage, standardize=standardize, warn_constant=warn_constant)
    flag_outliers(model, outlier_sigma)
    used = len(np.unique(model.labels))
    if used < k:
        # an empty cluster repeats the score of a smaller K
        logger.debug(f'{stage} sweep K={k}: only {used} clusters are populated')
        return model, float('inf')
    return model, davies_bouldin(model.transform(points), model.labels)


def db_sweep(points, k_range=range(2, 21), seed=0, max_iter=DEFAULT_MAX_ITER, tol=DEFAULT_TOL,
             n_init=DEFAULT_N_INIT, keys=None, stage='viewport', standardize=True,
             outlier_sigma=DEFAULT_OUTLIER_SIGMA, stability_tolerance=DEFAULT_STABILITY_TOLERANCE,
             n_jobs=1):
    """
    Fits one model per K in `k_range` and chooses K by the Davies-Bouldin
    index under the stability rule of `choose_stable_k`.

    :param points: N x D raw features, N > max(k_range)
    :rtype: DbSweepResult
    """
    k_values = sorted(set(int(k) for k in k_range))
    if not k_values:
        raise ConfigurationError("empty K range for the Davies-Bouldin sweep")
    if k_values[0] < 2:
        raise ConfigurationError("the Davies-Bouldin sweep needs K >= 2, got {}".format(k_values[0]))
    points = np.asarray(points, dtype=np.float64)
    if len(points) <= k_values[-1]:
        raise InsufficientDataError("{} points are too few for a sweep up to K={}".format(
            len(points), k_values[-1]))

    results = Parallel(n_jobs=n_jobs)(
        delayed(_fit_and_score)(points, k, seed, max_iter, tol, n_init, keys, stage, standardize,
                                outlier_sigma, k == k_values[0])
        for k in k_values)

    models = {}
    scores = []
    outliers = []
    for k, (model, score) in zip(k_values, results):
        logger.debug(f'{stage} sweep K={k}: DB {score:.4f}, {model.outlier_percentage:.2f}% outliers')
        models[k] = model
        scores.append(score)
        outliers.append(model.outlier_percentage)

    chosen = choose_stable_k(k_values, scores, outliers, stability_tolerance)
    logger.info(f'{stage} sweep over K={k_values[0]}..{k_values[-1]} chose K={chosen} '
                f'(DB {scores[k_values.index(chosen)]:.4f})')
    return DbSweepResult(k_values, scores, outliers, chosen, models)
