from __future__ import absolute_import

import os
import tempfile
import unittest

import numpy as np
from sklearn.metrics import adjusted_rand_score

from pyviewport.clustering import ClusterModel
from pyviewport.clustering import assign
from pyviewport.clustering import assign_many
from pyviewport.clustering import flag_outliers
from pyviewport.clustering import kmeans_fit
from pyviewport.exception import ClusteringError
from pyviewport.exception import ConfigurationError
from pyviewport.exception import DimensionMismatchError
from pyviewport.exception import InsufficientDataError


def blobs(n_per_blob=30, seed=0, spread=0.5):
    rng = np.random.default_rng(seed)
    centres = np.array([[0.0, 0.0], [10.0, 0.0], [0.0, 10.0]])
    labels = np.repeat(np.arange(len(centres)), n_per_blob)
    return centres[labels] + rng.normal(0.0, spread, (len(labels), 2)), labels


class TestKMeans(unittest.TestCase):
    """
    Seeded K-Means fit and assignment
    """

    def test_planted_blobs(self):
        points, truth = blobs()
        model = kmeans_fit(points, 3, seed=7)
        self.assertEqual(model.k, 3)
        self.assertEqual(model.dimension, 2)
        self.assertAlmostEqual(adjusted_rand_score(truth, model.labels), 1.0)
        np.testing.assert_array_equal(model.cluster_sizes(), [30, 30, 30])
        np.testing.assert_array_equal(assign_many(model, points), model.labels)

    def test_deterministic(self):
        points, _ = blobs(seed=2)
        first = kmeans_fit(points, 4, seed=11)
        second = kmeans_fit(points, 4, seed=11)
        np.testing.assert_array_equal(first.labels, second.labels)
        np.testing.assert_array_equal(first.centroids, second.centroids)
        self.assertEqual(first.inertia, second.inertia)

    def test_scale_invariance(self):
        points, _ = blobs(seed=3)
        scaled = points * np.array([1000.0, 0.001])
        a = kmeans_fit(points, 3, seed=1)
        b = kmeans_fit(scaled, 3, seed=1)
        self.assertAlmostEqual(adjusted_rand_score(a.labels, b.labels), 1.0)

    def test_point_order(self):
        points, truth = blobs(seed=4)
        order = np.random.default_rng(0).permutation(len(points))
        model = kmeans_fit(points[order], 3, seed=0)
        self.assertAlmostEqual(adjusted_rand_score(truth[order], model.labels), 1.0)

    def test_identical_points(self):
        points = np.ones((6, 3))
        model = kmeans_fit(points, 2, seed=0)
        self.assertEqual(model.inertia, 0.0)
        self.assertTrue(np.all((model.labels >= 0) & (model.labels < 2)))
        np.testing.assert_array_equal(model.distances, 0.0)

    def test_one_point_per_cluster(self):
        points = np.arange(12, dtype=float).reshape(6, 2) ** 2
        model = kmeans_fit(points, 6, seed=5)
        self.assertAlmostEqual(model.inertia, 0.0)
        self.assertEqual(sorted(model.labels.tolist()), list(range(6)))

    def test_single_cluster(self):
        points, _ = blobs()
        model = kmeans_fit(points, 1)
        np.testing.assert_array_equal(model.labels, 0)
        np.testing.assert_allclose(model.centroids[0], 0.0, atol=1e-12)

    def test_raw_features(self):
        points = np.array([[0.0], [0.1], [5.0], [5.1]])
        model = kmeans_fit(points, 2, standardize=False)
        np.testing.assert_array_equal(model.feature_stds, 1.0)
        np.testing.assert_allclose(sorted(model.centroids[:, 0]), [0.05, 5.05])

    def test_invalid_input(self):
        with self.assertRaises(ConfigurationError):
            kmeans_fit(np.zeros((4, 2)), 0)
        with self.assertRaises(InsufficientDataError):
            kmeans_fit(np.zeros((2, 2)), 3)
        with self.assertRaises(ClusteringError):
            kmeans_fit(np.array([[0.0, np.nan], [1.0, 1.0]]), 1)
        with self.assertRaises(ClusteringError):
            kmeans_fit(np.zeros(5), 1)


class TestAssign(unittest.TestCase):
    """
    Nearest centroid lookup of a fitted model
    """

    def setUp(self):
        self.model = ClusterModel('viewport', [[0.0, 0.0], [2.0, 0.0]], [0.0, 0.0], [1.0, 1.0], seed=0)

    def test_nearest(self):
        self.assertEqual(assign(self.model, [1.8, 0.5]), 1)
        self.assertEqual(assign(self.model, [-3.0, 0.0]), 0)

    def test_centroid_maps_to_itself(self):
        for c, centroid in enumerate(self.model.centroids):
            self.assertEqual(assign(self.model, centroid), c)

    def test_tie_goes_to_lower_index(self):
        self.assertEqual(assign(self.model, [1.0, 0.0]), 0)

    def test_standardized_space(self):
        model = ClusterModel('viewport', [[0.0], [2.0]], [10.0], [5.0], seed=0)
        self.assertEqual(assign(model, [19.0]), 1)
        self.assertEqual(assign(model, [11.0]), 0)

    def test_wrong_dimension(self):
        with self.assertRaises(DimensionMismatchError):
            assign(self.model, [1.0, 2.0, 3.0])
        with self.assertRaises(ClusteringError):
            assign(self.model, [[1.0, 2.0]])


class TestClusterModel(unittest.TestCase):
    """
    Outlier flags and the model file
    """

    def setUp(self):
        spread = np.linspace(-0.2, 0.2, 30)
        points = np.concatenate((spread, [3.0], 10.0 + spread))[:, None]
        self.keys = [(0, 0, j) for j in range(len(points))]
        self.model = flag_outliers(kmeans_fit(points, 2, seed=3, keys=self.keys), 3.0)
        self.points = points

    def test_far_point_is_outlier(self):
        np.testing.assert_array_equal(np.flatnonzero(self.model.outlier_flags), [30])
        self.assertAlmostEqual(self.model.outlier_percentage, 100.0 / 61)
        far_cluster = self.model.labels[30]
        self.assertEqual(self.model.labels[0], far_cluster)
        self.assertNotIn((0, 0, 30), self.model.members(far_cluster))
        self.assertIn((0, 0, 30), self.model.members(far_cluster, include_outliers=True))

    def test_outlier_sigma(self):
        relaxed = flag_outliers(self.model, 100.0)
        self.assertFalse(relaxed.outlier_flags.any())
        self.assertEqual(relaxed.outlier_sigma, 100.0)

    def test_save_load(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'model.yaml')
            self.model.save(path)
            loaded = ClusterModel.load(path)
        self.assertEqual(loaded.to_dict(), self.model.to_dict())
        self.assertEqual(loaded.assignments, self.model.assignments)
        np.testing.assert_array_equal(loaded.centroids, self.model.centroids)
        np.testing.assert_array_equal(loaded.outlier_flags, self.model.outlier_flags)
        np.testing.assert_array_equal(assign_many(loaded, self.points), self.model.labels)

    def test_key_count(self):
        with self.assertRaises(DimensionMismatchError):
            ClusterModel('video', [[0.0]], [0.0], [1.0], 0, keys=[(0, 0)], labels=[0, 0])
