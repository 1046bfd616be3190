"""
Reference clustering algorithms for the trace chunks of one video chunk:
maximal cliques of a proximity graph, spectral clustering of trajectories and
DBSCAN on mean view directions.
"""
import networkx as nx
import numpy as np
from sklearn.cluster import DBSCAN
from sklearn.cluster import SpectralClustering

from ..exception import DimensionMismatchError
from ..exception import InsufficientDataError
from ..geometry import direction_vector
from ..geometry import geodesic
from ..geometry import yaw_pitch_from_vector

DEFAULT_SPHERICAL_THRESHOLD = 0.35
DEFAULT_TRAJECTORY_SIGMA = 0.5
DEFAULT_TRAJECTORY_K_MAX = 8
DEFAULT_DBSCAN_EPS = 0.3
DEFAULT_DBSCAN_MIN_PTS = 2

NOISE = -1


class Partition(object):
    """
    Cluster label of every chunk, in input order. Label -1 marks noise.
    """

    def __init__(self, labels, algorithm):
        self.labels = np.asarray(labels, dtype=int)
        self.algorithm = algorithm

    @property
    def n_clusters(self):
        return len(set(self.labels.tolist()) - {NOISE})

    @property
    def n_noise(self):
        return int(np.sum(self.labels == NOISE))

    def groups(self):
        """
        :return: list of index arrays, one per cluster, noise excluded
        """
        return [np.flatnonzero(self.labels == label) for label in sorted(set(self.labels.tolist()) - {NOISE})]

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return 'Partition({}, clusters={}, noise={})'.format(self.algorithm, self.n_clusters, self.n_noise)


def _sample_arrays(chunks):
    if len(chunks) == 0:
        raise InsufficientDataError("no chunks to cluster")
    lengths = {len(chunk.yaw) for chunk in chunks}
    if len(lengths) != 1:
        raise DimensionMismatchError("chunks of one video chunk must have equal lengths, got {}".format(
            sorted(lengths)))
    yaw = np.array([chunk.yaw for chunk in chunks], dtype=np.float64)
    pitch = np.array([chunk.pitch for chunk in chunks], dtype=np.float64)
    return yaw, pitch


def mean_geodesic_matrix(chunks):
    """
    n x n matrix of the mean geodesic distance between corresponding samples
    of every pair of chunks.
    """
    yaw, pitch = _sample_arrays(chunks)
    distances = geodesic(yaw[:, None, :], pitch[:, None, :], yaw[None, :, :], pitch[None, :, :])
    matrix = np.asarray(distances).mean(axis=2)
    np.fill_diagonal(matrix, 0.0)
    return matrix


def baseline_spherical(chunks, threshold=DEFAULT_SPHERICAL_THRESHOLD):
    """
    Chunks closer than `threshold` radians (mean geodesic distance) are
    linked. The largest maximal clique becomes a cluster and is removed from
    the graph, until no node is left; equally large cliques go by their
    smallest member.
    :rtype: Partition
    """
    distances = mean_geodesic_matrix(chunks)
    graph = nx.Graph()
    graph.add_nodes_from(range(len(chunks)))
    rows, cols = np.nonzero(np.triu(distances < threshold, k=1))
    graph.add_edges_from(zip(rows.tolist(), cols.tolist()))

    labels = np.full(len(chunks), NOISE, dtype=int)
    label = 0
    while graph.number_of_nodes() > 0:
        clique = min((sorted(c) for c in nx.find_cliques(graph)), key=lambda c: (-len(c), c))
        labels[clique] = label
        graph.remove_nodes_from(clique)
        label += 1
    return Partition(labels, 'spherical')


def distortion(distances, labels, singleton_cost):
    """
    Sum over clusters of the mean pairwise distance inside the cluster. A
    singleton cluster costs `singleton_cost`.
    """
    total = 0.0
    for label in np.unique(labels):
        members = np.flatnonzero(labels == label)
        if len(members) == 1:
            total += singleton_cost
            continue
        block = distances[np.ix_(members, members)]
        total += block.sum() / (len(members) * (len(members) - 1))
    return total


def baseline_trajectory(chunks, k_max=DEFAULT_TRAJECTORY_K_MAX, sigma=DEFAULT_TRAJECTORY_SIGMA, seed=0):
    """
    Normalized spectral clustering on the affinity exp(-d / sigma) of the
    mean geodesic distances d, with k chosen in 1..k_max by the lowest
    distortion; the smaller k wins a tie.
    :rtype: Partition
    """
    if len(chunks) < 2:
        raise InsufficientDataError("trajectory clustering needs at least 2 chunks")
    distances = mean_geodesic_matrix(chunks)
    n_chunks = len(chunks)
    best_labels = np.zeros(n_chunks, dtype=int)
    best_score = distortion(distances, best_labels, sigma)
    if np.max(distances) <= 0.0:
        return Partition(best_labels, 'trajectory')

    affinity = np.exp(-distances / sigma)
    for k in range(2, min(k_max, n_chunks) + 1):
        if k == n_chunks:
            labels = np.arange(n_chunks)
        else:
            labels = SpectralClustering(n_clusters=k, affinity='precomputed', random_state=seed,
                                        assign_labels='kmeans').fit_predict(affinity)
        score = distortion(distances, labels, sigma)
        if score < best_score:
            best_labels, best_score = labels, score
    return Partition(best_labels, 'trajectory')


def mean_directions(chunks):
    """
    Mean view direction (yaw, pitch) of every chunk, averaged on the sphere.
    """
    yaw, pitch = _sample_arrays(chunks)
    return yaw_pitch_from_vector(direction_vector(yaw, pitch).mean(axis=1))


def baseline_dbscan(chunks, eps=DEFAULT_DBSCAN_EPS, min_pts=DEFAULT_DBSCAN_MIN_PTS):
    """
    DBSCAN over the mean view directions with geodesic distance. Noise chunks
    get label -1.
    :rtype: Partition
    """
    yaw, pitch = mean_directions(chunks)
    yaw = np.atleast_1d(yaw)
    pitch = np.atleast_1d(pitch)
    distances = np.asarray(geodesic(yaw[:, None], pitch[:, None], yaw[None, :], pitch[None, :]))
    np.fill_diagonal(distances, 0.0)
    labels = DBSCAN(eps=eps, min_samples=min_pts, metric='precomputed').fit_predict(distances)
    return Partition(labels, 'dbscan')
