from __future__ import absolute_import

import unittest

import numpy as np

from pyviewport.clustering import kmeans_fit
from pyviewport.evaluation import behavior_counts
from pyviewport.evaluation import clusters_per_video
from pyviewport.evaluation import static_vs_dynamic
from pyviewport.exception import InsufficientDataError
from pyviewport.features import VideoChunkFeatures
from pyviewport.features import build_f2_table
from pyviewport.generate import MIXTURE_PROFILES
from pyviewport.generate import mixture_videos


def population_table(n_videos=12, n_chunks=4, seed=0):
    """
    Video i follows mixture profile i mod 3 in every chunk, with a little
    noise on the shares.
    """
    rng = np.random.default_rng(seed)
    table = []
    for video_id in range(n_videos):
        for chunk_id in range(n_chunks):
            fractions = np.array(MIXTURE_PROFILES[video_id % 3]) + rng.uniform(0.0, 0.02, 3)
            table.append(VideoChunkFeatures(video_id, chunk_id, fractions / fractions.sum(), 20))
    return table


def fit_categories(table, k=3):
    return kmeans_fit(np.array([f2.fractions for f2 in table]), k, seed=0, standardize=False,
                      stage='video', keys=[f2.key for f2 in table])


class TestStaticVsDynamic(unittest.TestCase):
    """
    Genre grouping against the behaviour categories
    """

    def setUp(self):
        self.table = population_table()
        self.model = fit_categories(self.table)

    def test_misaligned_genres(self):
        genres = {video_id: 'genre-{}'.format((video_id // 3) % 3) for video_id in range(12)}
        comparison = static_vs_dynamic(self.table, genres, self.model)
        self.assertGreater(comparison.improvement, 15.0)
        self.assertLess(comparison.mean_within_dynamic, comparison.mean_within_static)
        summary = comparison.summary()
        self.assertEqual(summary['pairs_within_static'] + len(comparison.cross_static), 48 * 47 // 2)
        self.assertEqual(summary['excluded_videos'], [])

    def test_matching_genres(self):
        genres = {video_id: 'genre-{}'.format(video_id % 3) for video_id in range(12)}
        comparison = static_vs_dynamic(self.table, genres, self.model)
        self.assertAlmostEqual(comparison.improvement, 0.0)
        np.testing.assert_array_equal(comparison.within_static, comparison.within_dynamic)

    def test_missing_genres_are_excluded(self):
        genres = {video_id: 'genre-0' for video_id in range(1, 12)}
        with self.assertLogs('pyviewport', level='WARNING'):
            comparison = static_vs_dynamic(self.table, genres, self.model)
        self.assertEqual(comparison.excluded_videos, [0])
        self.assertEqual(len(comparison.within_static), 44 * 43 // 2)

    def test_histogram(self):
        genres = {video_id: 'genre-{}'.format((video_id // 3) % 3) for video_id in range(12)}
        histogram = static_vs_dynamic(self.table, genres, self.model).histogram(bins=10)
        self.assertEqual(len(histogram), 10)
        self.assertEqual(int(histogram['within_static'].sum() + histogram['cross_static'].sum()), 48 * 47 // 2)

    def test_too_few(self):
        with self.assertRaises(InsufficientDataError):
            static_vs_dynamic(self.table, {}, self.model)


class TestCategoryCounts(unittest.TestCase):
    """
    Categories per video and behaviours per video chunk
    """

    def test_clusters_per_video(self):
        counts, histogram = clusters_per_video({(0, 0): 1, (0, 1): 1, (1, 0): 0, (1, 1): 2, (2, 0): 2})
        self.assertEqual(counts, {0: 1, 1: 2, 2: 1})
        self.assertEqual(histogram['categories'].tolist(), [1, 2])
        self.assertEqual(histogram['videos'].tolist(), [2, 1])

    def test_alternating_videos(self):
        video_set = mixture_videos(n_videos=4, n_users=20, n_chunks=6, seed=1)
        table = build_f2_table(video_set.behaviors, 3)
        model = fit_categories(table)
        counts, _ = clusters_per_video(model.assignments)
        # every fourth video alternates between profiles
        self.assertEqual(counts, {0: 1, 1: 1, 2: 1, 3: 3})

    def test_behavior_ccdf(self):
        table = [VideoChunkFeatures(0, k, np.full(6, 1.0 / 6), 12) for k in range(4)]
        table.append(VideoChunkFeatures(1, 0, [1.0, 0, 0, 0, 0, 0], 12))
        counts = behavior_counts(table)
        np.testing.assert_array_equal(counts.counts, [6, 6, 6, 6, 1])
        ccdf = counts.ccdf()
        self.assertEqual(ccdf['behaviors'].tolist(), list(range(7)))
        self.assertAlmostEqual(ccdf['fraction_at_least'].iloc[0], 1.0)
        self.assertAlmostEqual(ccdf['fraction_at_least'].iloc[2], 0.8)
        self.assertAlmostEqual(counts.fraction_above_check, 0.8)
        self.assertTrue(counts.check_passed)
        self.assertIn('80.00%', counts.check_line())
        self.assertEqual(list(counts.to_frame().columns), ['video_id', 'chunk_id', 'behaviors'])

    def test_behavior_check_fails(self):
        table = [VideoChunkFeatures(0, k, [0.5, 0.5], 10) for k in range(3)]
        counts = behavior_counts(table, min_users=2)
        self.assertEqual(counts.fraction_above_check, 0.0)
        self.assertFalse(counts.check_passed)
