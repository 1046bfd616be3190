"""
Synthetic head-orientation data with planted behaviours.

Every chunk follows one behaviour archetype: a start direction and constant
yaw / pitch rates, perturbed per chunk and per sample. Videos are built from
behaviour-mixture profiles that fix which share of the users follows each
archetype in every chunk.
"""
import os

import numpy as np
import yaml

from ..features import TraceChunk
from ..geometry import clamp_pitch
from ..geometry import wrap_angle
from ..trace import ViewportTrace
from ..trace.orientation import quaternion_from_yaw_pitch


class Archetype(object):
    """
    Mean start direction (rad) and angular rates (rad/s) of one behaviour.
    """

    def __init__(self, name, yaw, pitch, yaw_rate, pitch_rate):
        self.name = name
        self.yaw = yaw
        self.pitch = pitch
        self.yaw_rate = yaw_rate
        self.pitch_rate = pitch_rate

    def __repr__(self):
        return 'Archetype({})'.format(self.name)


ARCHETYPES = (
    Archetype('static-center', 0.0, 0.0, 0.0, 0.0),
    Archetype('fast-equatorial', -1.5, 0.0, 2.5, 0.0),
    Archetype('wide-explorer', 2.0, -0.6, -0.8, 0.6),
)

# users following archetype 0, 1, 2 in a video chunk of each profile
MIXTURE_PROFILES = (
    (0.8, 0.1, 0.1),
    (0.1, 0.8, 0.1),
    (0.1, 0.1, 0.8),
)


class NoiseConfig(object):

    def __init__(self, start_std=0.05, rate_rel_std=0.05, jitter_std=0.005):
        self.start_std = start_std
        self.rate_rel_std = rate_rel_std
        self.jitter_std = jitter_std


def linear_chunk(yaw0, pitch0, yaw_rate, pitch_rate, n_samples=20, rate_hz=10,
                 video_id=0, chunk_id=0, user_id=0):
    """
    Chunk moving at constant rates from (yaw0, pitch0).
    :rtype: TraceChunk
    """
    t = np.arange(n_samples) / float(rate_hz)
    yaw = wrap_angle(yaw0 + yaw_rate * t)
    pitch = clamp_pitch(pitch0 + pitch_rate * t)
    return TraceChunk(video_id, chunk_id, user_id, np.atleast_1d(yaw), np.atleast_1d(pitch), rate_hz=rate_hz)


def archetype_samples(archetype, rng, n_samples=20, rate_hz=10, noise=None):
    """
    :return: (yaw, pitch) arrays of one perturbed chunk of the archetype
    """
    noise = NoiseConfig() if noise is None else noise
    t = np.arange(n_samples) / float(rate_hz)
    yaw0 = archetype.yaw + rng.normal(0.0, noise.start_std)
    pitch0 = archetype.pitch + rng.normal(0.0, noise.start_std)
    yaw_rate = archetype.yaw_rate * (1.0 + rng.normal(0.0, noise.rate_rel_std))
    pitch_rate = archetype.pitch_rate * (1.0 + rng.normal(0.0, noise.rate_rel_std))
    yaw = yaw0 + yaw_rate * t + rng.normal(0.0, noise.jitter_std, n_samples)
    pitch = pitch0 + pitch_rate * t + rng.normal(0.0, noise.jitter_std, n_samples)
    return np.atleast_1d(wrap_angle(yaw)), np.atleast_1d(clamp_pitch(pitch))


def planted_behaviors(n_per_archetype=50, seed=0, n_samples=20, rate_hz=10, noise=None):
    """
    Chunks of every archetype, `n_per_archetype` each, shuffled.
    :return: (list of TraceChunk, planted archetype index of every chunk)
    """
    rng = np.random.default_rng(seed)
    labels = rng.permutation(np.repeat(np.arange(len(ARCHETYPES)), n_per_archetype))
    chunks = []
    for user_id, label in enumerate(labels):
        yaw, pitch = archetype_samples(ARCHETYPES[label], rng, n_samples, rate_hz, noise)
        chunks.append(TraceChunk(0, 0, user_id, yaw, pitch, rate_hz=rate_hz))
    return chunks, labels


def sample_mixture(profile, n_users, rng):
    """
    Archetype of every user of a video chunk; the counts follow the profile's
    shares, rounded, and the users are shuffled.
    """
    counts = np.floor(np.asarray(profile) * n_users).astype(int)
    counts[int(np.argmax(profile))] += n_users - counts.sum()
    return rng.permutation(np.repeat(np.arange(len(profile)), counts))


class SyntheticVideoSet(object):
    """
    Traces of a set of synthetic videos with their planted structure:
    `behaviors[(i, k, j)]` is the archetype of user j in chunk k of video i,
    `profiles[(i, k)]` the mixture profile of the video chunk.
    """

    def __init__(self, traces, behaviors, profiles, genres):
        self.traces = traces
        self.behaviors = behaviors
        self.profiles = profiles
        self.genres = genres

    def video_ids(self):
        return sorted({trace.video_id for trace in self.traces})


def mixture_videos(n_videos=12, n_users=20, n_chunks=14, seed=0, chunk_seconds=2, rate_hz=10,
                   alternating_every=4, misaligned_genres=True, noise=None):
    """
    Videos whose chunks follow the mixture profiles. Video i uses profile
    i mod 3 in every chunk, except every `alternating_every`-th video, which
    alternates between two profiles from chunk to chunk.

    Genre labels are assigned so that they cut across the profiles when
    `misaligned_genres` is set, and match the dominant profile otherwise.

    :rtype: SyntheticVideoSet
    """
    rng = np.random.default_rng(seed)
    chunk_len = int(round(chunk_seconds * rate_hz))
    n_profiles = len(MIXTURE_PROFILES)
    traces, behaviors, profiles, genres = [], {}, {}, {}

    for video_id in range(n_videos):
        base = video_id % n_profiles
        alternating = alternating_every and video_id % alternating_every == alternating_every - 1
        yaw = np.zeros((n_users, n_chunks * chunk_len))
        pitch = np.zeros((n_users, n_chunks * chunk_len))
        for chunk_id in range(n_chunks):
            profile = (base + chunk_id) % n_profiles if alternating else base
            profiles[(video_id, chunk_id)] = profile
            users = sample_mixture(MIXTURE_PROFILES[profile], n_users, rng)
            window = slice(chunk_id * chunk_len, (chunk_id + 1) * chunk_len)
            for user_id, archetype in enumerate(users):
                behaviors[(video_id, chunk_id, user_id)] = int(archetype)
                yaw[user_id, window], pitch[user_id, window] = archetype_samples(
                    ARCHETYPES[archetype], rng, chunk_len, rate_hz, noise)
        genre = (video_id // n_profiles) % n_profiles if misaligned_genres else base
        genres[video_id] = 'genre-{}'.format(genre)

        # one trailing sample so the last chunk is complete
        t = np.arange(n_chunks * chunk_len + 1) / float(rate_hz)
        for user_id in range(n_users):
            traces.append(ViewportTrace(video_id, user_id, t,
                                        np.append(yaw[user_id], yaw[user_id, -1]),
                                        np.append(pitch[user_id], pitch[user_id, -1]),
                                        rate_hz=rate_hz))
    return SyntheticVideoSet(traces, behaviors, profiles, genres)


def planted_video_chunk(n_per_group=5, n_samples=20, rate_hz=10, video_id=0, chunk_id=0):
    """
    One video chunk with three groups of identical chunks: static at (0, 0),
    oscillating in yaw by +-0.1 rad around (0, 0), static at (2.5, 0).
    :return: (list of TraceChunk, planted group of every chunk)
    """
    oscillation = 0.1 * np.where(np.arange(n_samples) % 2 == 0, 1.0, -1.0)
    shapes = (
        (np.zeros(n_samples), np.zeros(n_samples)),
        (oscillation, np.zeros(n_samples)),
        (np.full(n_samples, 2.5), np.zeros(n_samples)),
    )
    chunks, groups = [], []
    for group, (yaw, pitch) in enumerate(shapes):
        for _ in range(n_per_group):
            chunks.append(TraceChunk(video_id, chunk_id, len(chunks), yaw, pitch, rate_hz=rate_hz))
            groups.append(group)
    return chunks, np.array(groups)


def write_trace_file(trace, path, format_tag='euler_csv', degrees=False):
    """
    Writes a trace as a raw source file: `t,yaw,pitch` for euler_csv or
    `t,qw,qx,qy,qz` for quaternion_csv, with a header line.
    """
    if format_tag == 'quaternion_csv':
        header = 't,qw,qx,qy,qz'
        columns = quaternion_from_yaw_pitch(trace.yaw, trace.pitch)
    else:
        header = 't,yaw,pitch'
        yaw, pitch = (np.degrees(trace.yaw), np.degrees(trace.pitch)) if degrees else (trace.yaw, trace.pitch)
        columns = np.stack((yaw, pitch), axis=-1)
    with open(path, 'w', newline='\n') as trace_file:
        trace_file.write(header + '\n')
        for t, row in zip(trace.t, columns):
            trace_file.write(','.join(['{:.6f}'.format(t)] + ['{:.12g}'.format(v) for v in row]) + '\n')


def write_dataset(video_set, directory, format_tags=('euler_csv', 'quaternion_csv')):
    """
    Writes the raw files of a synthetic video set and a manifest listing
    them, alternating the formats across videos.
    :return: path of the manifest
    """
    os.makedirs(directory, exist_ok=True)
    entries = []
    for trace in video_set.traces:
        format_tag = format_tags[trace.video_id % len(format_tags)]
        name = 'raw_{}_{}.csv'.format(trace.video_id, trace.user_id)
        write_trace_file(trace, os.path.join(directory, name), format_tag)
        entries.append({
            'source_path': name,
            'video_id': trace.video_id,
            'user_id': trace.user_id,
            'format_tag': format_tag,
            'genre_label': video_set.genres.get(trace.video_id),
        })
    manifest_path = os.path.join(directory, 'manifest.yaml')
    with open(manifest_path, 'w') as manifest_file:
        yaml.safe_dump({'entries': entries}, manifest_file, sort_keys=True)
    return manifest_path
