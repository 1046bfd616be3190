"""
Analyses of the stage-2 categories: comparison with a static genre grouping,
number of categories per video and number of behaviours per video chunk.
"""
import numpy as np
import pandas as pd

from ..custom_logging.logger import logger
from ..exception import InsufficientDataError
from ..features import count_behaviors
from .reports import DEFAULT_SAMPLE_CAP
from .reports import sample_pairs

# behaviour counts are checked against: more than 4 behaviours in at least 75% of the video chunks
BEHAVIOR_CHECK_COUNT = 4
BEHAVIOR_CHECK_FRACTION = 0.75


class StaticDynamicComparison(object):
    """
    Within and cross category distances under the genre grouping (static)
    and the stage-2 categories (dynamic), over the same pairs of video chunks.
    """

    def __init__(self, within_static, cross_static, within_dynamic, cross_dynamic, excluded_videos):
        self.within_static = np.asarray(within_static)
        self.cross_static = np.asarray(cross_static)
        self.within_dynamic = np.asarray(within_dynamic)
        self.cross_dynamic = np.asarray(cross_dynamic)
        self.excluded_videos = list(excluded_videos)

    @staticmethod
    def _mean(values):
        return float(np.mean(values)) if len(values) > 0 else None

    @property
    def mean_within_static(self):
        return self._mean(self.within_static)

    @property
    def mean_within_dynamic(self):
        return self._mean(self.within_dynamic)

    @property
    def improvement(self):
        """
        Relative reduction of the mean within-group distance, in percent.
        """
        static = self.mean_within_static
        dynamic = self.mean_within_dynamic
        if static is None or dynamic is None or static == 0.0:
            return None
        return (static - dynamic) / static * 100.0

    def summary(self):
        return {
            'within_static': self.mean_within_static,
            'cross_static': self._mean(self.cross_static),
            'within_dynamic': self.mean_within_dynamic,
            'cross_dynamic': self._mean(self.cross_dynamic),
            'improvement_percent': self.improvement,
            'pairs_within_static': int(len(self.within_static)),
            'pairs_within_dynamic': int(len(self.within_dynamic)),
            'excluded_videos': [int(video) for video in self.excluded_videos],
        }

    def histogram(self, bins=20):
        """
        Distributions of the four distance sets on common bins.
        """
        edges = np.linspace(0.0, np.sqrt(2.0), bins + 1)
        frame = pd.DataFrame({'bin_low': edges[:-1], 'bin_high': edges[1:]})
        for name in ('within_static', 'cross_static', 'within_dynamic', 'cross_dynamic'):
            frame[name] = np.histogram(getattr(self, name), bins=edges)[0]
        return frame


def static_vs_dynamic(f2_table, genre_labels, model, sample_cap=DEFAULT_SAMPLE_CAP, seed=0):
    """
    :param f2_table: VideoChunkFeatures of every video chunk
    :param genre_labels: mapping video_id -> genre; videos without one are excluded
    :param model: fitted stage-2 ClusterModel
    :rtype: StaticDynamicComparison
    """
    categories = model.assignments
    excluded = sorted({f2.video_id for f2 in f2_table if genre_labels.get(f2.video_id) is None})
    if excluded:
        logger.warning(f'Videos without a genre label are left out of the genre comparison: {excluded}')
    rows = [f2 for f2 in f2_table if f2.video_id not in excluded and f2.key in categories]
    if len(rows) < 2:
        raise InsufficientDataError("fewer than 2 labelled video chunks to compare")

    genres = sorted({str(genre_labels[f2.video_id]) for f2 in rows})
    static = np.array([genres.index(str(genre_labels[f2.video_id])) for f2 in rows])
    dynamic = np.array([categories[f2.key] for f2 in rows])
    fractions = np.array([f2.fractions for f2 in rows])

    first, second = sample_pairs(len(rows), sample_cap, seed)
    distances = np.linalg.norm(fractions[first] - fractions[second], axis=1)
    same_static = static[first] == static[second]
    same_dynamic = dynamic[first] == dynamic[second]
    return StaticDynamicComparison(distances[same_static], distances[~same_static],
                                   distances[same_dynamic], distances[~same_dynamic], excluded)


def clusters_per_video(assignments):
    """
    :param assignments: mapping (video_id, chunk_id) -> category
    :return: (mapping video_id -> number of distinct categories, histogram frame)
    """
    categories = {}
    for (video_id, _chunk_id), category in assignments.items():
        categories.setdefault(video_id, set()).add(category)
    counts = {video_id: len(values) for video_id, values in sorted(categories.items())}
    histogram = np.bincount(list(counts.values())) if counts else np.zeros(1, dtype=int)
    frame = pd.DataFrame({'categories': np.arange(len(histogram)), 'videos': histogram})
    return counts, frame[frame['categories'] > 0].reset_index(drop=True)


class BehaviorCounts(object):
    """
    Number of behaviours shown by at least `min_users` users in every video
    chunk, with its complementary cumulative distribution.
    """

    def __init__(self, keys, counts, min_users):
        self.keys = list(keys)
        self.counts = np.asarray(counts, dtype=int)
        self.min_users = min_users

    def ccdf(self):
        """
        Fraction of video chunks with at least x behaviours, for x = 0..max.
        """
        x = np.arange(0, int(self.counts.max(initial=0)) + 1)
        fraction = np.array([np.mean(self.counts >= value) for value in x]) if len(self.counts) else x * 0.0
        return pd.DataFrame({'behaviors': x, 'fraction_at_least': fraction})

    @property
    def fraction_above_check(self):
        if len(self.counts) == 0:
            return 0.0
        return float(np.mean(self.counts > BEHAVIOR_CHECK_COUNT))

    @property
    def check_passed(self):
        return self.fraction_above_check >= BEHAVIOR_CHECK_FRACTION

    def check_line(self):
        return ('{:.2f}% of video chunks have more than {} behaviours (reference: at least {:.0f}%): {}'.format(
            100.0 * self.fraction_above_check, BEHAVIOR_CHECK_COUNT, 100.0 * BEHAVIOR_CHECK_FRACTION,
            'yes' if self.check_passed else 'no'))

    def to_frame(self):
        return pd.DataFrame({'video_id': [key[0] for key in self.keys],
                             'chunk_id': [key[1] for key in self.keys],
                             'behaviors': self.counts})


def behavior_counts(f2_table, min_users=2):
    """
    :rtype: BehaviorCounts
    """
    return BehaviorCounts([f2.key for f2 in f2_table],
                          [count_behaviors(f2, min_users=min_users) for f2 in f2_table],
                          min_users)
