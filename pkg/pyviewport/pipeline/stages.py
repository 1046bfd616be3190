"""
The pipeline stages behind the command line. Every stage reads its inputs
from the run folder, writes its outputs there and records their hashes; a
stage whose inputs, parameters and outputs are unchanged is skipped.
"""
import os
from glob import glob

import numpy as np
import pandas as pd

from ..clustering import ClusterModel
from ..clustering import db_sweep
from ..clustering import flag_outliers
from ..clustering import kmeans_fit
from ..custom_logging.logger import logger
from ..evaluation import BaselineParameters
from ..evaluation import behavior_counts
from ..evaluation import category_report
from ..evaluation import cluster_histograms
from ..evaluation import cluster_profiles
from ..evaluation import cluster_similarity_report
from ..evaluation import clusters_per_video
from ..evaluation import compare_baselines
from ..evaluation import static_vs_dynamic
from ..evaluation import summarize_comparison
from ..evaluation import video_feature_distribution
from ..exception import ConfigurationError
from ..exception import InsufficientDataError
from ..exception import StageError
from ..features import FEATURE_NAMES
from ..features import build_f2_table
from ..features import chunk_traces
from ..features import extract_all
from ..features import group_by_video_chunk
from ..features.tables import read_f1_table
from ..features.tables import read_f2_table
from ..features.tables import write_f1_table
from ..features.tables import write_f2_table
from ..trace import load_manifest
from ..trace import load_unified
from ..trace import read_store
from ..trace import write_store
from . import plots
from .heatmap import render_heatmap
from .heatmap import sample_heatmap

_AREA_COLUMN = FEATURE_NAMES.index('area_explored')


def _store_files(management):
    return sorted(glob(os.path.join(management.store_folder, '*.csv')))


def _require(path, what, command):
    if not os.path.exists(path):
        raise StageError("{} not found at {}".format(what, path), hint="run `viewport.py {}` first".format(command))


def _load_store(config, management):
    if not _store_files(management):
        raise StageError("no unified trace store in {}".format(management.store_folder),
                         hint="run `viewport.py unify --manifest ...` first")
    return read_store(management.store_folder, config.rate_hz)


def _load_chunks(config, management):
    store = _load_store(config, management)
    return store, chunk_traces(store.traces, config.chunk_seconds, config.max_chunks)


def cmd_unify(config, management):
    """
    Parses, converts and resamples every trace of the manifest into the
    unified store.
    :rtype: UnifiedStore
    """
    if config.manifest is None:
        raise ConfigurationError("`unify` needs --manifest")
    manifest = load_manifest(config.manifest)
    inputs = [config.manifest] + sorted({entry.source_path for entry in manifest.entries
                                         if os.path.exists(entry.source_path)})
    params = config.stage_params('unify')
    if management.stage_is_current('unify', inputs, params):
        return read_store(management.store_folder, config.rate_hz)

    logger.info(f'Unifying {len(manifest)} traces of {config.manifest}')
    store = load_unified(manifest, config.rate_hz, config.n_jobs)
    outputs = write_store(store, management.store_folder)

    summary = store.summary()
    summary['formats'] = {tag: sum(1 for entry in manifest.entries if entry.format_tag == tag)
                          for tag in sorted({entry.format_tag for entry in manifest.entries})}
    summary['errors'] = list(store.errors)
    outputs.append(management.export_summary('dataset_summary.yaml', summary))
    management.record_stage('unify', inputs, outputs, params)
    return store


def cmd_features(config, management):
    """
    Chunks the unified traces and writes the behavioural feature table.
    :return: (keys, feature matrix)
    """
    inputs = _store_files(management)
    params = config.stage_params('features')
    if management.stage_is_current('features', inputs, params):
        return read_f1_table(management.f1_path)

    _, chunks = _load_chunks(config, management)
    if not chunks:
        raise InsufficientDataError("no trace is long enough for a single {}s chunk".format(config.chunk_seconds))
    logger.info(f'Extracting features of {len(chunks)} trace chunks')
    features = extract_all(chunks, config.viewport, config.coverage_cell_deg, config.n_jobs)
    write_f1_table(features, management.f1_path)
    management.record_stage('features', inputs, [management.f1_path], params)
    return read_f1_table(management.f1_path)


def _sweep_range(k_range, n_points, what):
    k_values = [k for k in k_range if k < n_points]
    if not k_values:
        raise InsufficientDataError("{} {} are too few for K={}..{}".format(
            n_points, what, k_range[0], k_range[-1]))
    if len(k_values) < len(k_range):
        logger.warning(f'Sweep over {what} limited to K<={k_values[-1]} by the number of points')
    return k_values


def _fit_stage(config, points, keys, stage, k_range, fixed_k, standardize, name):
    """
    Either one K-Means fit with a fixed K or a Davies-Bouldin sweep.
    :return: (model, sweep result or None)
    """
    feature_names = list(FEATURE_NAMES) if stage == 'viewport' else None
    if fixed_k is not None:
        if len(points) < fixed_k:
            raise InsufficientDataError("{} points cannot form {} clusters".format(len(points), fixed_k))
        model = kmeans_fit(points, fixed_k, seed=config.seed, max_iter=config.max_iter, tol=config.tol,
                           n_init=config.n_init, keys=keys, stage=stage, standardize=standardize,
                           feature_names=feature_names)
        return flag_outliers(model, config.outlier_sigma), None

    k_values = _sweep_range(list(k_range), len(points), name)
    sweep = db_sweep(points, k_values, seed=config.seed, max_iter=config.max_iter, tol=config.tol,
                     n_init=config.n_init, keys=keys, stage=stage, standardize=standardize,
                     outlier_sigma=config.outlier_sigma, stability_tolerance=config.stability_tolerance,
                     n_jobs=config.n_jobs)
    return sweep.chosen_model, sweep


def _export_sweep(management, sweep, prefix, label):
    if sweep is None:
        return []
    table = management.export_table('{}_db_sweep.csv'.format(prefix), sweep.to_frame())
    figure = management.report_path('{}_db_sweep.png'.format(prefix))
    plots.plot_db_sweep(sweep, figure, label)
    return [table]


def cmd_cluster_viewports(config, management):
    """
    Stage 1: clusters the trace chunks into behaviours.
    :return: (ClusterModel, DbSweepResult or None)
    """
    # features are rebuilt on demand, and whenever the store changed
    if _store_files(management):
        cmd_features(config, management)
    _require(management.f1_path, "feature table", 'features')
    inputs = [management.f1_path]
    params = config.stage_params('cluster-viewports')
    if management.stage_is_current('cluster-viewports', inputs, params):
        return ClusterModel.load(management.viewport_model_path), None

    keys, features = read_f1_table(management.f1_path)
    model, sweep = _fit_stage(config, features, keys, 'viewport', config.m_range, config.fixed_m,
                              True, 'trace chunks')
    model.save(management.viewport_model_path)
    logger.info(f'Stage 1 model: M={model.k}, {model.outlier_percentage:.2f}% outliers')
    outputs = [management.viewport_model_path] + _export_sweep(management, sweep, 'viewport', 'M')
    management.record_stage('cluster-viewports', inputs, outputs, params)
    return model, sweep


def cmd_categorize(config, management):
    """
    Stage 2: population vectors of the video chunks and their categories.
    :return: (ClusterModel, DbSweepResult or None)
    """
    _require(management.viewport_model_path, "stage-1 model", 'cluster-viewports')
    inputs = [management.viewport_model_path]
    params = config.stage_params('categorize')
    if management.stage_is_current('categorize', inputs, params):
        return ClusterModel.load(management.video_model_path), None

    viewport_model = ClusterModel.load(management.viewport_model_path)
    f2_table = build_f2_table(viewport_model.assignments, viewport_model.k)
    write_f2_table(f2_table, management.f2_path)
    logger.info(f'Built {len(f2_table)} population vectors over M={viewport_model.k} behaviours')

    points = np.array([f2.fractions for f2 in f2_table])
    keys = [f2.key for f2 in f2_table]
    model, sweep = _fit_stage(config, points, keys, 'video', config.q_range, config.fixed_q,
                              config.standardize_video, 'video chunks')
    model.save(management.video_model_path)
    logger.info(f'Stage 2 model: Q={model.k}')

    categories = pd.DataFrame({'video_id': [key[0] for key in model.keys],
                               'chunk_id': [key[1] for key in model.keys],
                               'category': model.labels})
    outputs = [management.f2_path, management.video_model_path,
               management.export_table('categories.csv', categories)]
    outputs += _export_sweep(management, sweep, 'video', 'Q')
    management.record_stage('categorize', inputs, outputs, params)
    return model, sweep


def _evaluate_stage1(config, management):
    _require(management.viewport_model_path, "stage-1 model", 'cluster-viewports')
    model = ClusterModel.load(management.viewport_model_path)
    _, chunks = _load_chunks(config, management)
    coverage = None
    if os.path.exists(management.f1_path):
        keys, features = read_f1_table(management.f1_path)
        coverage = dict(zip(keys, features[:, _AREA_COLUMN]))

    written = []
    summary = {}
    for include_outliers, suffix in ((False, ''), (True, '_with_outliers')):
        report = cluster_similarity_report(model, chunks, config.sample_cap, config.seed, include_outliers,
                                           config.viewport, config.coverage_cell_deg, coverage, config.n_jobs)
        written.append(management.export_table('stage1_similarity{}.csv'.format(suffix), report.to_frame()))
        summary['outliers_included' if include_outliers else 'outliers_excluded'] = report.summary()
    summary['outlier_percentage'] = model.outlier_percentage
    written.append(management.export_summary('stage1_summary.yaml', summary))
    excluded = summary['outliers_excluded']
    logger.info(f"Stage 1: within VPO {excluded['within_vpo']}, cross VPO {excluded['cross_vpo']}")
    return written


def _load_stage2(management):
    _require(management.video_model_path, "stage-2 model", 'categorize')
    _require(management.f2_path, "population vector table", 'categorize')
    return ClusterModel.load(management.video_model_path), read_f2_table(management.f2_path)


def _evaluate_stage2(config, management):
    model, f2_table = _load_stage2(management)
    report = category_report(model, f2_table, config.sample_cap, config.seed)
    counts, histogram = clusters_per_video(model.assignments)
    written = [management.export_table('stage2_similarity.csv', report.to_frame()),
               management.export_table('clusters_per_video.csv', histogram),
               management.export_summary('stage2_summary.yaml', dict(
                   report.summary(), clusters_per_video={int(v): int(c) for v, c in counts.items()}))]
    logger.info(f'Stage 2: within S {report.within_S}, cross S {report.cross_S}')
    return written


def _evaluate_baselines(config, management, videos=None):
    _, chunks = _load_chunks(config, management)
    params = BaselineParameters(config.spherical_threshold, config.trajectory_sigma, config.trajectory_k_max,
                                config.dbscan_eps, config.dbscan_min_pts, config.seed, config.n_init)
    frame = compare_baselines(group_by_video_chunk(chunks), params, videos, config.viewport,
                              config.coverage_cell_deg, config.n_jobs)
    if frame.empty:
        raise InsufficientDataError("no video chunk selected for the baseline comparison")
    summary = summarize_comparison(frame)
    plots.plot_baseline_summary(summary, management.report_path('baselines.png'))
    return [management.export_table('baselines.csv', frame),
            management.export_table('baselines_summary.csv', summary)]


def _evaluate_static_dynamic(config, management):
    model, f2_table = _load_stage2(management)
    store = _load_store(config, management)
    comparison = static_vs_dynamic(f2_table, store.genres, model, config.sample_cap, config.seed)
    histogram = comparison.histogram()
    plots.plot_distance_histogram(histogram, management.report_path('static_dynamic.png'))
    logger.info(f'Dynamic categories improve within-group similarity by {comparison.improvement}%')
    return [management.export_table('static_dynamic_histogram.csv', histogram),
            management.export_summary('static_dynamic.yaml', comparison.summary())]


def _evaluate_behaviors(config, management):
    _, f2_table = _load_stage2(management)
    counts = behavior_counts(f2_table, config.min_users)
    ccdf = counts.ccdf()
    plots.plot_ccdf(ccdf, management.report_path('behaviors_ccdf.png'))
    logger.info(counts.check_line())
    return [management.export_table('behaviors.csv', counts.to_frame()),
            management.export_table('behaviors_ccdf.csv', ccdf),
            management.export_summary('behaviors.yaml', {
                'min_users': counts.min_users,
                'video_chunks': len(counts.counts),
                'fraction_above_check': counts.fraction_above_check,
                'check_passed': counts.check_passed,
                'check': counts.check_line(),
            })]


def _evaluate_profiles(config, management):
    _require(management.viewport_model_path, "stage-1 model", 'cluster-viewports')
    _require(management.f1_path, "feature table", 'features')
    model = ClusterModel.load(management.viewport_model_path)
    keys, features = read_f1_table(management.f1_path)
    profiles = cluster_profiles(model, keys, features)
    plots.plot_profiles(profiles, management.report_path('profiles.png'))
    return [management.export_table('profiles.csv', profiles),
            management.export_table('profile_histograms.csv', cluster_histograms(model, keys, features)),
            management.export_table('video_features.csv', video_feature_distribution(keys, features))]


def cmd_evaluate(config, management, which, videos=None):
    """
    Writes one evaluation report.
    :param which: stage1, stage2, baselines, static_dynamic, behaviors or profiles
    :param videos: video ids the baseline comparison is restricted to
    :return: written report files
    """
    evaluations = {
        'stage1': _evaluate_stage1,
        'stage2': _evaluate_stage2,
        'baselines': lambda c, m: _evaluate_baselines(c, m, videos),
        'static_dynamic': _evaluate_static_dynamic,
        'behaviors': _evaluate_behaviors,
        'profiles': _evaluate_profiles,
    }
    if which not in evaluations:
        raise ConfigurationError("unknown evaluation '{}', expected one of {}".format(
            which, ', '.join(sorted(evaluations))))
    logger.info(f'Evaluating {which}')
    return evaluations[which](config, management)


def _category_samples(config, management, category):
    model = ClusterModel.load(management.video_model_path)
    selected = {key for key, label in model.assignments.items() if label == category}
    _, chunks = _load_chunks(config, management)
    return [chunk for chunk in chunks if chunk.video_chunk in selected]


def _cluster_samples(config, management, cluster):
    model = ClusterModel.load(management.viewport_model_path)
    selected = set(model.members(cluster))
    _, chunks = _load_chunks(config, management)
    return [chunk for chunk in chunks if chunk.key in selected]


def cmd_heatmap(config, management, cluster=None, category=None):
    """
    Heatmap of the samples of one behaviour cluster or one video category.
    :return: (grid file, image file)
    """
    if (cluster is None) == (category is None):
        raise ConfigurationError("select exactly one of a cluster or a category")
    if cluster is not None:
        _require(management.viewport_model_path, "stage-1 model", 'cluster-viewports')
        name, chunks = 'cluster_{}'.format(cluster), _cluster_samples(config, management, cluster)
    else:
        _require(management.video_model_path, "stage-2 model", 'categorize')
        name, chunks = 'category_{}'.format(category), _category_samples(config, management, category)
    if not chunks:
        raise InsufficientDataError("{} has no trace chunks".format(name.replace('_', ' ')))

    heatmap = sample_heatmap([chunk.yaw for chunk in chunks], [chunk.pitch for chunk in chunks],
                             config.heatmap_cell_deg)
    grid_path = os.path.join(management.heatmaps_folder, '{}.grid.csv'.format(name))
    image_path = os.path.join(management.heatmaps_folder, '{}.png'.format(name))
    heatmap.save_grid(grid_path)
    render_heatmap(heatmap, image_path, '{} ({} chunks)'.format(name.replace('_', ' '), len(chunks)))
    logger.info(f'Heatmap of {name}: {heatmap.total} samples from {len(chunks)} chunks')
    return grid_path, image_path
