import math

import numpy as np

from ..exception import DimensionMismatchError
from ..trace import HeadSample

DEFAULT_CHUNK_SECONDS = 2
DEFAULT_MAX_CHUNKS = 14


class TraceChunk(object):
    """
    The samples of user j watching chunk k of video i.
    """

    def __init__(self, video_id, chunk_id, user_id, yaw, pitch, rate_hz=10, start=0.0):
        self.video_id = int(video_id)
        self.chunk_id = int(chunk_id)
        self.user_id = int(user_id)
        self.yaw = np.asarray(yaw, dtype=np.float64)
        self.pitch = np.asarray(pitch, dtype=np.float64)
        self.rate_hz = rate_hz
        self.start = float(start)
        if len(self.yaw) != len(self.pitch):
            raise DimensionMismatchError("chunk ({}, {}, {}) has {} yaw and {} pitch samples".format(
                self.video_id, self.chunk_id, self.user_id, len(self.yaw), len(self.pitch)))

    @property
    def key(self):
        return self.video_id, self.chunk_id, self.user_id

    @property
    def video_chunk(self):
        return self.video_id, self.chunk_id

    @property
    def t(self):
        return self.start + np.arange(len(self.yaw)) / self.rate_hz

    @property
    def samples(self):
        return [HeadSample(t, yaw, pitch) for t, yaw, pitch in zip(self.t, self.yaw, self.pitch)]

    def __len__(self):
        return len(self.yaw)

    def __repr__(self):
        return 'TraceChunk(video={}, chunk={}, user={})'.format(*self.key)


def chunk_count(duration, chunk_seconds=DEFAULT_CHUNK_SECONDS, max_chunks=DEFAULT_MAX_CHUNKS):
    return max(0, min(int(math.floor(duration / chunk_seconds + 1e-9)), max_chunks))


def chunk_trace(trace, chunk_seconds=DEFAULT_CHUNK_SECONDS, max_chunks=DEFAULT_MAX_CHUNKS):
    """
    Cuts one unified trace into consecutive non-overlapping windows; a partial
    trailing window is dropped.
    :type trace: ViewportTrace
    :return: list of TraceChunk
    """
    chunk_len = int(round(chunk_seconds * trace.rate_hz))
    chunks = []
    for k in range(chunk_count(trace.duration, chunk_seconds, max_chunks)):
        window = slice(k * chunk_len, (k + 1) * chunk_len)
        if len(trace.yaw[window]) < chunk_len:
            break
        chunks.append(TraceChunk(trace.video_id, k, trace.user_id,
                                 trace.yaw[window], trace.pitch[window],
                                 rate_hz=trace.rate_hz, start=trace.t[k * chunk_len]))
    return chunks


def chunk_traces(traces, chunk_seconds=DEFAULT_CHUNK_SECONDS, max_chunks=DEFAULT_MAX_CHUNKS):
    """
    Chunks every trace of a unified store.
    :return: list of TraceChunk sorted by (video, chunk, user)
    """
    chunks = []
    for trace in traces:
        chunks.extend(chunk_trace(trace, chunk_seconds, max_chunks))
    return sorted(chunks, key=lambda chunk: chunk.key)


def group_by_video_chunk(chunks):
    """
    :return: {(video_id, chunk_id): [TraceChunk, ...]} with users in order
    """
    groups = {}
    for chunk in chunks:
        groups.setdefault(chunk.video_chunk, []).append(chunk)
    return {key: sorted(members, key=lambda chunk: chunk.user_id) for key, members in sorted(groups.items())}
