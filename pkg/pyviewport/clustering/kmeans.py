"""
Seeded K-Means on standardized features.

Initialization is greedy k-means++: every new centre is the best of a few
candidates drawn proportionally to the squared distance to the closest
existing centre. Several restarts share one generator and the restart with
the lowest inertia is kept, so a fit is fully determined by the point order,
the seed and K.
"""
import math

import numpy as np
from scipy.spatial.distance import cdist

from ..custom_logging.logger import logger
from ..exception import ClusteringError
from ..exception import ConfigurationError
from ..exception import InsufficientDataError
from .model import ClusterModel
from .model import standardization

DEFAULT_MAX_ITER = 300
DEFAULT_TOL = 1e-6
DEFAULT_N_INIT = 5


def _squared_distances(points, centroids):
    return cdist(points, centroids, 'sqeuclidean')


def _init_centroids(points, k, rng):
    n_points = len(points)
    n_trials = 2 + int(math.log(k))
    centroids = np.empty((k, points.shape[1]))
    centroids[0] = points[rng.integers(n_points)]
    closest = _squared_distances(points, centroids[:1])[:, 0]

    for c in range(1, k):
        potential = closest.sum()
        if potential <= 0.0:
            # every point already sits on a centre
            candidates = rng.integers(n_points, size=n_trials)
        else:
            cumulative = np.cumsum(closest)
            candidates = np.searchsorted(cumulative, rng.random(n_trials) * potential, side='right')
            candidates = np.minimum(candidates, n_points - 1)
        candidate_distances = np.minimum(closest[None, :], _squared_distances(points[candidates], points))
        best = int(np.argmin(candidate_distances.sum(axis=1)))
        centroids[c] = points[candidates[best]]
        closest = candidate_distances[best]
    return centroids


def _lloyd(points, centroids, max_iter, tol):
    """
    :return: (centroids, labels, squared distances to own centre, iterations)
    """
    rows = np.arange(len(points))
    previous_inertia = np.inf
    n_iter = 0
    for n_iter in range(1, max_iter + 1):
        distances = _squared_distances(points, centroids)
        labels = np.argmin(distances, axis=1)
        inertia = distances[rows, labels].sum()
        assert inertia <= previous_inertia + 1e-9 * max(1.0, abs(inertia)), \
            "K-Means inertia increased from {} to {}".format(previous_inertia, inertia)
        previous_inertia = inertia

        updated = centroids.copy()
        own = distances[rows, labels]
        for c in range(len(centroids)):
            members = labels == c
            if members.any():
                updated[c] = points[members].mean(axis=0)
                continue
            farthest = int(np.argmax(own))
            # re-seed only when it moves a point closer; otherwise the centre stays empty
            if own[farthest] > 0.0:
                updated[c] = points[farthest]
                labels[farthest] = c
                own[farthest] = 0.0

        shift = np.sqrt(np.max(np.sum((updated - centroids) ** 2, axis=1)))
        centroids = updated
        if shift < tol:
            break

    distances = _squared_distances(points, centroids)
    labels = np.argmin(distances, axis=1)
    return centroids, labels, distances[rows, labels], n_iter


def kmeans_fit(points, k, seed=0, max_iter=DEFAULT_MAX_ITER, tol=DEFAULT_TOL, n_init=DEFAULT_N_INIT,
               keys=None, stage='viewport', standardize=True, feature_names=None, warn_constant=True):
    """
    Fits K-Means on the rows of `points`.

    :param points: N x D raw features
    :param k: number of clusters
    :param seed: seed of the generator driving the initialization
    :param n_init: number of seeded restarts, the lowest inertia wins
    :param keys: identifiers of the rows, kept in the model's assignment table
    :param stage: 'viewport' or 'video'
    :param standardize: z-score the features first, otherwise fit the raw values
    :rtype: ClusterModel
    """
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2:
        raise ClusteringError("expected an N x D matrix, got shape {}".format(points.shape))
    if k < 1:
        raise ConfigurationError("K must be at least 1, got {}".format(k))
    if len(points) < k:
        raise InsufficientDataError("{} points cannot form {} clusters".format(len(points), k))
    if not np.all(np.isfinite(points)):
        raise ClusteringError("K-Means input contains non-finite values")

    if standardize:
        means, stds = standardization(points, feature_names, warn_constant)
    else:
        means, stds = np.zeros(points.shape[1]), np.ones(points.shape[1])
    scaled = (points - means) / stds

    rng = np.random.default_rng(seed)
    best = None
    for _ in range(max(1, n_init)):
        fit = _lloyd(scaled, _init_centroids(scaled, k, rng), max_iter, tol)
        inertia = float(fit[2].sum())
        if best is None or inertia < best[0]:
            best = (inertia, fit)

    inertia, (centroids, labels, squared, n_iter) = best
    logger.debug(f'K-Means K={k} ({stage}) converged after {n_iter} iterations, inertia {inertia:.6g}')
    return ClusterModel(stage, centroids, means, stds, seed,
                        keys=keys, labels=labels, distances=np.sqrt(squared),
                        inertia=inertia, n_iter=n_iter)


def assign_many(model, points):
    """
    Nearest centroid of every row of `points`, ties going to the lower index.
    """
    scaled = np.atleast_2d(model.transform(points))
    return np.argmin(_squared_distances(scaled, model.centroids), axis=1)


def assign(model, point):
    """
    :type model: ClusterModel
    :param point: raw D-dimensional feature vector
    :return: cluster index in [0, K)
    """
    point = np.asarray(point, dtype=np.float64)
    if point.ndim != 1:
        raise ClusteringError("assign takes a single feature vector")
    return int(assign_many(model, point[None, :])[0])
