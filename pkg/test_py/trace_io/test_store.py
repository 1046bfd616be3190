from __future__ import absolute_import

import os
import tempfile
import unittest

import numpy as np
import yaml

from pyviewport.exception import InsufficientDataError
from pyviewport.exception import TraceValidationError
from pyviewport.generate import mixture_videos
from pyviewport.generate import write_dataset
from pyviewport.trace import load_manifest
from pyviewport.trace import load_unified
from pyviewport.trace import read_store
from pyviewport.trace import write_store


class TestUnifiedStore(unittest.TestCase):
    """
    Manifest ingestion and the on-disk unified store
    """

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.video_set = mixture_videos(n_videos=2, n_users=3, n_chunks=2, seed=4)
        self.manifest_path = write_dataset(self.video_set, os.path.join(self.directory.name, 'raw'))

    def tearDown(self):
        self.directory.cleanup()

    def test_load_mixed_formats(self):
        manifest = load_manifest(self.manifest_path)
        self.assertEqual(len(manifest), 6)
        self.assertEqual({entry.format_tag for entry in manifest}, {'euler_csv', 'quaternion_csv'})

        store = load_unified(manifest)
        self.assertEqual(len(store), 6)
        self.assertEqual(store.videos(), [0, 1])
        self.assertEqual(store.errors, [])
        self.assertEqual(store.genres, self.video_set.genres)
        for unified, original in zip(store, self.video_set.traces):
            self.assertEqual(unified.key, original.key)
            self.assertEqual(len(unified), len(original))
            np.testing.assert_allclose(unified.pitch, original.pitch, atol=1e-6)
            yaw_error = np.angle(np.exp(1j * (unified.yaw - original.yaw)))
            np.testing.assert_allclose(yaw_error, 0.0, atol=1e-6)

    def test_summary(self):
        summary = load_unified(load_manifest(self.manifest_path)).summary()
        self.assertEqual(summary['videos'], 2)
        self.assertEqual(summary['traces'], 6)
        self.assertAlmostEqual(summary['traces_per_video_mean'], 3.0)
        self.assertAlmostEqual(summary['duration_max_s'], 4.0)

    def test_failing_entry_is_collected(self):
        with open(os.path.join(self.directory.name, 'raw', 'raw_0_0.csv'), 'w') as broken:
            broken.write('t,yaw,pitch\n0.0,0,0\n')
        store = load_unified(load_manifest(self.manifest_path))
        self.assertEqual(len(store), 5)
        self.assertEqual(len(store.errors), 1)
        self.assertIn('raw_0_0.csv', store.errors[0])

    def test_round_trip(self):
        store = load_unified(load_manifest(self.manifest_path))
        store_dir = os.path.join(self.directory.name, 'store')
        paths = write_store(store, store_dir)
        self.assertEqual(len(paths), 7)

        loaded = read_store(store_dir)
        self.assertEqual([trace.key for trace in loaded], [trace.key for trace in store])
        self.assertEqual(loaded.genres, store.genres)
        for a, b in zip(loaded, store):
            np.testing.assert_allclose(a.t, b.t, atol=1e-6)
            np.testing.assert_allclose(a.yaw, b.yaw, atol=1e-6)
            np.testing.assert_allclose(a.pitch, b.pitch, atol=1e-6)

    def test_empty_store_directory(self):
        with self.assertRaises(InsufficientDataError):
            read_store(self.directory.name)

    def test_manifest_missing_field(self):
        path = os.path.join(self.directory.name, 'bad.yaml')
        with open(path, 'w') as manifest_file:
            yaml.safe_dump({'entries': [{'source_path': 'a.csv', 'video_id': 0, 'user_id': 0}]}, manifest_file)
        with self.assertRaises(TraceValidationError):
            load_manifest(path)

    def test_manifest_duplicate_entry(self):
        path = os.path.join(self.directory.name, 'dup.yaml')
        entry = {'source_path': 'a.csv', 'video_id': 0, 'user_id': 0, 'format_tag': 'euler_csv'}
        with open(path, 'w') as manifest_file:
            yaml.safe_dump({'entries': [entry, dict(entry)]}, manifest_file)
        with self.assertRaises(TraceValidationError):
            load_manifest(path)

    def test_nothing_loads(self):
        path = os.path.join(self.directory.name, 'missing.yaml')
        entry = {'source_path': 'nowhere.csv', 'video_id': 0, 'user_id': 0, 'format_tag': 'euler_csv'}
        with open(path, 'w') as manifest_file:
            yaml.safe_dump({'entries': [entry]}, manifest_file)
        with self.assertRaises(InsufficientDataError):
            load_unified(load_manifest(path))
