from __future__ import absolute_import

import unittest

import numpy as np

from pyviewport.clustering import flag_outliers
from pyviewport.clustering import kmeans_fit
from pyviewport.evaluation import cluster_histograms
from pyviewport.evaluation import cluster_profiles
from pyviewport.evaluation import video_feature_distribution
from pyviewport.exception import DimensionMismatchError
from pyviewport.features import FEATURE_NAMES
from pyviewport.features import extract_all
from pyviewport.generate import planted_behaviors


class TestProfiles(unittest.TestCase):
    """
    Feature distributions of the behaviour clusters
    """

    @classmethod
    def setUpClass(cls):
        chunks, cls.truth = planted_behaviors(n_per_archetype=15, seed=2)
        cls.keys = [chunk.key for chunk in chunks]
        cls.features = np.array([features.values for features in extract_all(chunks)])
        cls.model = flag_outliers(kmeans_fit(cls.features, 3, seed=0, keys=cls.keys))

    def test_profiles(self):
        profiles = cluster_profiles(self.model, self.keys, self.features, include_outliers=True)
        self.assertEqual(len(profiles), 3 * len(FEATURE_NAMES))
        self.assertEqual(list(profiles.columns), ['cluster', 'size', 'feature', 'mean', 'p25', 'p75'])
        speeds = profiles[profiles['feature'] == 'speed_yaw_mean'].set_index('cluster')['mean']
        # one cluster holds the still viewers, one the fast turning ones
        self.assertLess(speeds.abs().min(), 0.2)
        self.assertAlmostEqual(speeds.max(), 2.5, delta=0.3)
        self.assertTrue(np.all(profiles['p25'] <= profiles['p75'] + 1e-12))
        sizes = profiles.drop_duplicates('cluster')['size'].tolist()
        self.assertEqual(sum(sizes), 45)

    def test_histograms(self):
        histograms = cluster_histograms(self.model, self.keys, self.features, bins=5)
        self.assertEqual(len(histograms), len(FEATURE_NAMES) * 3 * 5)
        per_feature = histograms.groupby('feature')['count'].sum()
        self.assertTrue(np.all(per_feature == 45))

    def test_video_distribution(self):
        distribution = video_feature_distribution(self.keys, self.features)
        self.assertEqual(len(distribution), 1)
        self.assertEqual(int(distribution['users'].iloc[0]), 45)
        self.assertAlmostEqual(distribution['max_angle_yaw'].iloc[0],
                               self.features[:, FEATURE_NAMES.index('max_angle_yaw')].mean())

    def test_misaligned_keys(self):
        with self.assertRaises(DimensionMismatchError):
            cluster_profiles(self.model, self.keys[:-1], self.features)
