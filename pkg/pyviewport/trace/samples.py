import numpy as np

from ..exception import TraceValidationError
from ..geometry import clamp_pitch
from ..geometry import wrap_angle

FORMAT_TAGS = ('quaternion_csv', 'euler_csv')


class HeadSample(object):
    """
    One head orientation: time in seconds, yaw and pitch in radians.
    """
    __slots__ = ('t', 'yaw', 'pitch')

    def __init__(self, t, yaw, pitch):
        if t < 0:
            raise TraceValidationError("negative sample time {}".format(t))
        self.t = float(t)
        self.yaw = wrap_angle(yaw)
        self.pitch = clamp_pitch(pitch)

    def __iter__(self):
        return iter((self.t, self.yaw, self.pitch))

    def __eq__(self, other):
        return isinstance(other, HeadSample) and tuple(self) == tuple(other)

    def __repr__(self):
        return 'HeadSample(t={:.3f}, yaw={:.6f}, pitch={:.6f})'.format(self.t, self.yaw, self.pitch)


class ViewportTrace(object):
    """
    Orientation stream of one user watching one video. Samples are held as
    parallel numpy arrays; `samples` gives them as HeadSample objects.
    """

    def __init__(self, video_id, user_id, t, yaw, pitch, rate_hz=None):
        """
        :param video_id: video index i
        :param user_id: user index j
        :param t: sample times in seconds, strictly increasing
        :param yaw: radians, wrapped into [-pi, pi)
        :param pitch: radians, clamped into [-pi/2, pi/2]
        :param rate_hz: nominal sample rate, None for irregular raw traces
        """
        self.video_id = int(video_id)
        self.user_id = int(user_id)
        self.t = np.asarray(t, dtype=np.float64)
        self.yaw = np.atleast_1d(wrap_angle(yaw))
        self.pitch = np.atleast_1d(clamp_pitch(pitch))
        self.rate_hz = rate_hz

        if not (len(self.t) == len(self.yaw) == len(self.pitch)):
            raise TraceValidationError("trace ({}, {}) has columns of different length".format(
                self.video_id, self.user_id))
        if len(self.t) > 1 and np.any(np.diff(self.t) <= 0):
            raise TraceValidationError("trace ({}, {}) timestamps are not strictly increasing".format(
                self.video_id, self.user_id))

    @property
    def key(self):
        return self.video_id, self.user_id

    @property
    def samples(self):
        return [HeadSample(t, yaw, pitch) for t, yaw, pitch in zip(self.t, self.yaw, self.pitch)]

    @property
    def duration(self):
        return float(self.t[-1] - self.t[0]) if len(self.t) > 0 else 0.0

    def __len__(self):
        return len(self.t)

    def __repr__(self):
        return 'ViewportTrace(video={}, user={}, samples={}, rate={})'.format(
            self.video_id, self.user_id, len(self), self.rate_hz)


class ManifestEntry(object):

    def __init__(self, source_path, video_id, user_id, format_tag,
                 genre_label=None, degrees=False, frame=None):
        if format_tag not in FORMAT_TAGS:
            raise TraceValidationError("unknown format_tag '{}' for {}".format(format_tag, source_path))
        self.source_path = source_path
        self.video_id = int(video_id)
        self.user_id = int(user_id)
        self.format_tag = format_tag
        self.genre_label = genre_label
        self.degrees = bool(degrees)
        self.frame = frame

    @property
    def key(self):
        return self.video_id, self.user_id

    def __repr__(self):
        return 'ManifestEntry({}, video={}, user={}, {})'.format(
            self.source_path, self.video_id, self.user_id, self.format_tag)


class DatasetManifest(object):
    """
    The list of raw trace files making up the unified dataset.
    """

    def __init__(self, entries):
        self.entries = list(entries)
        seen = set()
        for entry in self.entries:
            if entry.key in seen:
                raise TraceValidationError("duplicate manifest entry for video {} user {}".format(*entry.key))
            seen.add(entry.key)

    def genre_labels(self):
        """
        :return: video_id -> genre label, for videos that have one
        """
        genres = {}
        for entry in self.entries:
            if entry.genre_label is not None:
                genres.setdefault(entry.video_id, entry.genre_label)
        return genres

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)
