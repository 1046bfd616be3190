"""
Figures of the reports. Everything is drawn off-screen with the Agg backend;
the numbers behind every figure are written as tables next to it.
"""
import numpy as np


def pyplot():
    import matplotlib
    matplotlib.use('agg')
    import matplotlib.pyplot as plt
    return plt


def save_figure(plt, figure, path):
    figure.tight_layout()
    figure.savefig(path, dpi=100, metadata={'Software': None})
    plt.close(figure)


def plot_db_sweep(result, path, label='K'):
    """
    :type result: DbSweepResult
    """
    plt = pyplot()
    figure, axis = plt.subplots(figsize=(6, 4))
    scores = np.array(result.scores)
    finite = np.isfinite(scores)
    axis.plot(np.array(result.k_values)[finite], scores[finite], marker='o', color='tab:blue')
    axis.axvline(result.chosen_k, color='tab:red', linestyle='--', label='chosen {}={}'.format(label, result.chosen_k))
    axis.set_xlabel(label)
    axis.set_ylabel('Davies-Bouldin score')
    outliers = axis.twinx()
    outliers.plot(result.k_values, result.outlier_percentages, marker='x', color='tab:gray')
    outliers.set_ylabel('outliers (%)')
    axis.legend(loc='upper right')
    save_figure(plt, figure, path)


def plot_ccdf(frame, path):
    plt = pyplot()
    figure, axis = plt.subplots(figsize=(6, 4))
    axis.step(frame['behaviors'], frame['fraction_at_least'], where='post')
    axis.set_xlabel('behaviours per video chunk')
    axis.set_ylabel('fraction of video chunks with at least x')
    axis.set_ylim(0.0, 1.05)
    save_figure(plt, figure, path)


def plot_distance_histogram(histogram, path):
    """
    :param histogram: frame from StaticDynamicComparison.histogram
    """
    plt = pyplot()
    figure, axis = plt.subplots(figsize=(6, 4))
    centers = 0.5 * (histogram['bin_low'] + histogram['bin_high'])
    for column in ('within_static', 'within_dynamic'):
        counts = histogram[column].to_numpy(dtype=float)
        total = counts.sum()
        axis.plot(centers, counts / total if total else counts, label=column.replace('_', ' '))
    axis.set_xlabel('category distance')
    axis.set_ylabel('share of pairs')
    axis.legend()
    save_figure(plt, figure, path)


def plot_baseline_summary(summary, path):
    plt = pyplot()
    metrics = ('within_vpo', 'within_speed_diff', 'within_explore_diff')
    figure, axes = plt.subplots(1, len(metrics), figsize=(12, 4))
    for axis, metric in zip(axes, metrics):
        axis.bar(summary['algorithm'], summary[metric].fillna(0.0))
        axis.set_title(metric.replace('_', ' '))
    save_figure(plt, figure, path)


def plot_profiles(profiles, path):
    """
    Mean and interquartile range of every feature per cluster.
    """
    plt = pyplot()
    features = list(dict.fromkeys(profiles['feature']))
    clusters = sorted(set(profiles['cluster']))
    columns = 5
    rows = int(np.ceil(len(features) / float(columns)))
    figure, axes = plt.subplots(rows, columns, figsize=(3 * columns, 2.5 * rows), squeeze=False)
    for axis, feature in zip(axes.ravel(), features):
        part = profiles[profiles['feature'] == feature].set_index('cluster').reindex(clusters)
        low = (part['mean'] - part['p25']).clip(lower=0.0)
        high = (part['p75'] - part['mean']).clip(lower=0.0)
        axis.errorbar(clusters, part['mean'], yerr=[low, high], fmt='o')
        axis.set_title(feature, fontsize=8)
        axis.set_xticks(clusters)
    for axis in axes.ravel()[len(features):]:
        axis.set_visible(False)
    save_figure(plt, figure, path)
