"""
Ingestion of a dataset manifest into the unified trace store, and the store's
on-disk format: one `trace_<video>_<user>.csv` per trace with header
`video_id,user_id,t,yaw,pitch` (radians, 6 decimals) plus `videos.csv` with the
genre label of every video.
"""
import os
from glob import glob

import numpy as np
import pandas as pd
import yaml
from joblib import Parallel, delayed

from ..custom_logging.logger import logger
from ..exception import InsufficientDataError
from ..exception import TraceValidationError
from ..exception import ViewportException
from .orientation import SourceFrame
from .parse import parse_trace
from .resample import DEFAULT_RATE_HZ
from .resample import resample
from .samples import DatasetManifest
from .samples import ManifestEntry
from .samples import ViewportTrace

STORE_HEADER = 'video_id,user_id,t,yaw,pitch'
VIDEOS_FILE = 'videos.csv'


def load_manifest(path):
    """
    Reads a YAML manifest. Relative `source_path`s are resolved against the
    manifest's directory.
    :rtype: DatasetManifest
    """
    with open(path) as manifest_file:
        data = yaml.safe_load(manifest_file) or {}
    base_dir = os.path.dirname(os.path.abspath(path))
    entries = []
    for index, raw in enumerate(data.get('entries') or []):
        try:
            source_path = raw['source_path']
            entries.append(ManifestEntry(
                source_path=source_path if os.path.isabs(source_path) else os.path.join(base_dir, source_path),
                video_id=raw['video_id'],
                user_id=raw['user_id'],
                format_tag=raw['format_tag'],
                genre_label=raw.get('genre_label'),
                degrees=raw.get('degrees', False),
                frame=SourceFrame.from_dict(raw.get('frame')),
            ))
        except KeyError as e:
            raise TraceValidationError("manifest entry {} misses field {}".format(index, e))
    return DatasetManifest(entries)


def load_entry(entry, target_hz=DEFAULT_RATE_HZ):
    """
    Parses and resamples the file behind one manifest entry.
    :type entry: ManifestEntry
    :rtype: ViewportTrace
    """
    with open(entry.source_path, 'rb') as raw_file:
        trace = parse_trace(raw_file, entry.format_tag,
                            video_id=entry.video_id,
                            user_id=entry.user_id,
                            degrees=entry.degrees,
                            frame=entry.frame or SourceFrame())
    return resample(trace, target_hz)


def _load_entry_safe(entry, target_hz):
    try:
        return load_entry(entry, target_hz), None
    except (OSError, ViewportException) as e:
        return None, '{}: {}'.format(entry.source_path, e)


class UnifiedStore(object):
    """
    The unified traces, sorted by (video, user), together with the
    ingestion errors of the entries that could not be loaded. Read only once
    built.
    """

    def __init__(self, traces, errors=None, genres=None):
        self.traces = tuple(sorted(traces, key=lambda trace: trace.key))
        self.errors = list(errors or [])
        self.genres = dict(genres or {})

    def __len__(self):
        return len(self.traces)

    def __iter__(self):
        return iter(self.traces)

    def videos(self):
        return sorted({trace.video_id for trace in self.traces})

    def summary(self):
        """
        Dataset statistics: videos, traces per video, durations.
        """
        per_video = {}
        for trace in self.traces:
            per_video.setdefault(trace.video_id, []).append(trace.duration)
        counts = [len(durations) for durations in per_video.values()]
        durations = [duration for values in per_video.values() for duration in values]
        if not counts:
            return {'videos': 0, 'traces': 0, 'failed_entries': len(self.errors)}
        return {
            'videos': len(per_video),
            'traces': len(self.traces),
            'failed_entries': len(self.errors),
            'traces_per_video_mean': float(np.mean(counts)),
            'traces_per_video_min': int(min(counts)),
            'traces_per_video_max': int(max(counts)),
            'duration_min_s': float(min(durations)),
            'duration_max_s': float(max(durations)),
            'viewing_hours': float(sum(durations) / 3600.0),
        }


def load_unified(manifest, target_hz=DEFAULT_RATE_HZ, n_jobs=1):
    """
    Loads every manifest entry at the canonical rate. Failing entries are
    logged and collected; the run only fails when nothing loads.

    :type manifest: DatasetManifest
    :rtype: UnifiedStore
    """
    results = Parallel(n_jobs=n_jobs)(
        delayed(_load_entry_safe)(entry, target_hz) for entry in manifest.entries)

    traces = []
    errors = []
    for trace, error in results:
        if error is not None:
            logger.error(f'Could not load trace {error}')
            errors.append(error)
        else:
            traces.append(trace)

    if not traces:
        raise InsufficientDataError("none of the {} manifest entries could be loaded".format(len(manifest)))

    store = UnifiedStore(traces, errors, manifest.genre_labels())
    summary = store.summary()
    logger.info(f"Unified {summary['traces']} traces of {summary['videos']} videos "
                f"({summary['traces_per_video_mean']:.1f} traces per video, "
                f"{summary['viewing_hours']:.2f} hours, {len(errors)} entries failed)")
    return store


def trace_filename(video_id, user_id):
    return f'trace_{video_id}_{user_id}.csv'


def write_trace(trace, path):
    lines = [STORE_HEADER]
    for t, yaw, pitch in zip(trace.t, trace.yaw, trace.pitch):
        lines.append(f'{trace.video_id},{trace.user_id},{t:.6f},{yaw:.6f},{pitch:.6f}')
    with open(path, 'w', newline='\n') as store_file:
        store_file.write('\n'.join(lines) + '\n')


def write_store(store, directory):
    """
    Writes the unified store. Existing trace files in `directory` are removed
    first so the directory always mirrors exactly one store.
    :type store: UnifiedStore
    :return: written file paths, sorted
    """
    os.makedirs(directory, exist_ok=True)
    for stale in glob(os.path.join(directory, 'trace_*.csv')):
        os.remove(stale)

    paths = []
    for trace in store.traces:
        path = os.path.join(directory, trace_filename(trace.video_id, trace.user_id))
        write_trace(trace, path)
        paths.append(path)

    videos_path = os.path.join(directory, VIDEOS_FILE)
    with open(videos_path, 'w', newline='\n') as videos_file:
        videos_file.write('video_id,genre_label\n')
        for video_id in store.videos():
            genre = store.genres.get(video_id)
            videos_file.write(f"{video_id},{'' if genre is None else genre}\n")
    paths.append(videos_path)
    return sorted(paths)


def read_trace(path, rate_hz=DEFAULT_RATE_HZ):
    frame = pd.read_csv(path)
    if len(frame) == 0:
        raise InsufficientDataError("empty trace file {}".format(path))
    return ViewportTrace(frame['video_id'].iloc[0], frame['user_id'].iloc[0],
                         frame['t'].to_numpy(), frame['yaw'].to_numpy(), frame['pitch'].to_numpy(),
                         rate_hz=rate_hz)


def read_store(directory, rate_hz=DEFAULT_RATE_HZ):
    """
    :rtype: UnifiedStore
    """
    paths = sorted(glob(os.path.join(directory, 'trace_*.csv')))
    if not paths:
        raise InsufficientDataError("no unified traces in {}".format(directory))
    genres = {}
    videos_path = os.path.join(directory, VIDEOS_FILE)
    if os.path.exists(videos_path):
        videos = pd.read_csv(videos_path, dtype={'genre_label': str}, keep_default_na=False)
        genres = {int(row.video_id): row.genre_label for row in videos.itertuples() if row.genre_label}
    return UnifiedStore([read_trace(path, rate_hz) for path in paths], genres=genres)
