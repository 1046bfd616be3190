from __future__ import absolute_import

import os
import tempfile
import unittest

import numpy as np

from pyviewport.exception import ClusteringError
from pyviewport.exception import DimensionMismatchError
from pyviewport.exception import InsufficientDataError
from pyviewport.features import ChunkFeatures
from pyviewport.features import N_FEATURES
from pyviewport.features import build_f2_table
from pyviewport.features import count_behaviors
from pyviewport.features import extract_f2
from pyviewport.features.tables import read_f1_table
from pyviewport.features.tables import read_f2_table
from pyviewport.features.tables import write_f1_table
from pyviewport.features.tables import write_f2_table


class TestVideoFeatures(unittest.TestCase):
    """
    Population vectors of video chunks
    """

    def setUp(self):
        # video 0 chunk 0: users spread 2 / 1 / 1 over three clusters
        self.assignments = {
            (0, 0, 0): 0, (0, 0, 1): 0, (0, 0, 2): 1, (0, 0, 3): 2,
            (0, 1, 0): 1, (0, 1, 1): 1, (0, 1, 2): 1, (0, 1, 3): 1,
            (1, 0, 0): 2, (1, 0, 1): 0,
        }

    def test_fractions(self):
        f2 = extract_f2(self.assignments, 0, 0, 3)
        np.testing.assert_allclose(f2.fractions, [0.5, 0.25, 0.25])
        self.assertEqual(f2.n_users, 4)
        np.testing.assert_array_equal(f2.counts, [2, 1, 1])

    def test_table(self):
        table = build_f2_table(self.assignments, 3)
        self.assertEqual([f2.key for f2 in table], [(0, 0), (0, 1), (1, 0)])
        for f2 in table:
            self.assertAlmostEqual(float(np.sum(f2.fractions)), 1.0)
            self.assertEqual(len(f2), 3)
        np.testing.assert_allclose(table[1].fractions, [0.0, 1.0, 0.0])

    def test_errors(self):
        with self.assertRaises(InsufficientDataError):
            extract_f2(self.assignments, 5, 0, 3)
        with self.assertRaises(DimensionMismatchError):
            extract_f2(self.assignments, 0, 0, 3, n_users=5)
        with self.assertRaises(ClusteringError):
            extract_f2(self.assignments, 0, 0, 2)

    def test_count_behaviors(self):
        table = build_f2_table(self.assignments, 3)
        self.assertEqual(count_behaviors(table[0]), 1)
        self.assertEqual(count_behaviors(table[0], min_users=1), 3)
        self.assertEqual(count_behaviors(table[1]), 1)
        self.assertEqual(count_behaviors(table[2]), 0)


class TestFeatureTables(unittest.TestCase):
    """
    Feature tables written and read back
    """

    def test_f1_table(self):
        rng = np.random.default_rng(3)
        features = [ChunkFeatures(rng.normal(size=N_FEATURES), key=(0, k, j)) for k in range(2) for j in range(3)]
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'f1.csv')
            write_f1_table(features, path)
            with open(path) as table:
                self.assertTrue(table.readline().startswith('video_id,chunk_id,user_id,f1,f2'))
            keys, matrix = read_f1_table(path)
        self.assertEqual(keys, [feature.key for feature in features])
        np.testing.assert_array_equal(matrix, np.array([feature.values for feature in features]))

    def test_f2_table(self):
        table = build_f2_table({(3, 0, 0): 0, (3, 0, 1): 1, (3, 0, 2): 1}, 2)
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'f2.csv')
            write_f2_table(table, path)
            loaded = read_f2_table(path)
        self.assertEqual(loaded[0].key, (3, 0))
        self.assertEqual(loaded[0].n_users, 3)
        np.testing.assert_array_equal(loaded[0].fractions, table[0].fractions)

    def test_missing_columns(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'f1.csv')
            with open(path, 'w') as table:
                table.write('video_id,chunk_id,user_id,f1\n0,0,0,1.0\n')
            with self.assertRaises(DimensionMismatchError):
                read_f1_table(path)
