import argparse
import os

from .exception import ConfigurationError
from .exception import TraceValidationError
from .exception import err
from .geometry import ViewportSpec

COMMANDS = ('unify', 'features', 'cluster-viewports', 'categorize', 'evaluate', 'heatmap')
EVALUATIONS = ('stage1', 'stage2', 'baselines', 'static_dynamic', 'behaviors', 'profiles')


class CustomParser(argparse.ArgumentParser):
    """
    Extends argument parser to add some simple file reading / writing
    functionality.
    """

    def convert_arg_line_to_args(self, arg_line):
        """
        Simple arg line converter that returns `--my-argument value` from
        lines like "my_argument=value"
        :param arg_line:
        :return:
        """
        arg_line = arg_line.strip()
        # Empty or comment line
        if not arg_line or arg_line[0] == "#":
            return []

        split = arg_line.find("=")
        if split < 0:
            return [arg_line]

        k, v = "--" + arg_line[:split].strip().replace("_", "-"), arg_line[1 + split:].strip()

        # Try to determine if this key is a store constant action, if so
        # return only the key.
        const = False
        for a in self._actions:
            if k in a.option_strings and a.const is not None:
                const = True
                break

        return [k] if const else [k, v]

    def read_config_file(self, path):
        """
        Arguments of a key=value configuration file.
        """
        if not os.path.exists(path):
            raise ConfigurationError("configuration file {} does not exist".format(path))
        arguments = []
        with open(path) as config_file:
            for line in config_file:
                arguments.extend(self.convert_arg_line_to_args(line))
        return arguments

    @staticmethod
    def record(args, file):
        """
        Takes the result of `parse_args` and writes it back to a file.
        """
        lines = ["{key}={value}\n".format(key=k, value=args.__dict__[k]) for k
                 in sorted(args.__dict__.keys()) if args.__dict__[k] is not None]
        with open(file, 'w', newline='\n') as configuration_output:
            configuration_output.writelines(lines)


def str_to_bool(v):
    """
    :type v: str
    """
    return str(v).lower() in ("true", "1")


def str_to_int_list(v):
    """
    :type v: str
    """
    return [int(item) for item in str(v).replace(';', ',').split(',') if item.strip()]


common = CustomParser(add_help=False)

common.add_argument(
    '--config',
    default=None, type=str,
    help="key=value configuration file; command line flags override its values. Default \"None\"."
)

common.add_argument(
    '--seed',
    default=0, type=int,
    help="Seed of every stochastic step (K-Means initialization, pair sampling). Default \"0\"."
)

common.add_argument(
    '--out-dir',
    default='output', type=str,
    help="Folder holding the store, features, models, reports and heatmaps of a run. Default \"output\"."
)

common.add_argument(
    '--log-level',
    default='INFO', type=str, choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'),
    help="Verbosity of the run log. Default \"INFO\"."
)

common.add_argument(
    '--n-jobs',
    default=1, type=int,
    help="Worker processes for ingestion, feature extraction and sweeps. Default \"1\"."
)

common.add_argument(
    '--manifest',
    default=None, type=str,
    help="YAML dataset manifest read by `unify`. Default \"None\"."
)

common.add_argument(
    '--rate-hz',
    default=10.0, type=float,
    help="Canonical sample rate of the unified traces. Default \"10\"."
)

common.add_argument(
    '--chunk-seconds',
    default=2.0, type=float,
    help="Length of a trace chunk in seconds. Default \"2\"."
)

common.add_argument(
    '--max-chunks',
    default=14, type=int,
    help="Chunks kept per trace. Default \"14\"."
)

common.add_argument(
    '--viewport-yaw-deg',
    default=100.0, type=float,
    help="Horizontal viewport extent in degrees. Default \"100\"."
)

common.add_argument(
    '--viewport-pitch-deg',
    default=100.0, type=float,
    help="Vertical viewport extent in degrees. Default \"100\"."
)

common.add_argument(
    '--coverage-cell-deg',
    default=1.0, type=float,
    help="Cell size of the grid used for the explored sphere area. Default \"1\"."
)

common.add_argument(
    '--m-min',
    default=2, type=int,
    help="Smallest number of behaviour clusters tried. Default \"2\"."
)

common.add_argument(
    '--m-max',
    default=20, type=int,
    help="Largest number of behaviour clusters tried. Default \"20\"."
)

common.add_argument(
    '--q-min',
    default=2, type=int,
    help="Smallest number of video categories tried. Default \"2\"."
)

common.add_argument(
    '--q-max',
    default=20, type=int,
    help="Largest number of video categories tried. Default \"20\"."
)

common.add_argument(
    '--fixed-m',
    default=None, type=int,
    help="Use this number of behaviour clusters instead of sweeping. Default \"None\"."
)

common.add_argument(
    '--fixed-q',
    default=None, type=int,
    help="Use this number of video categories instead of sweeping. Default \"None\"."
)

common.add_argument(
    '--n-init',
    default=5, type=int,
    help="Seeded K-Means restarts, the lowest inertia is kept. Default \"5\"."
)

common.add_argument(
    '--max-iter',
    default=300, type=int,
    help="Maximum Lloyd iterations. Default \"300\"."
)

common.add_argument(
    '--tol',
    default=1e-6, type=float,
    help="K-Means stops when no centroid moves more than this. Default \"1e-6\"."
)

common.add_argument(
    '--stability-tolerance',
    default=0.10, type=float,
    help="Relative Davies-Bouldin tolerance of the stability rule. Default \"0.10\"."
)

common.add_argument(
    '--outlier-sigma',
    default=3.0, type=float,
    help="Outliers lie further than mean + sigma * std from their centroid. Default \"3\"."
)

common.add_argument(
    '--sample-cap',
    default=1000000, type=int,
    help="Maximum number of pairs evaluated per report. Default \"1000000\"."
)

common.add_argument(
    '--min-users',
    default=2, type=int,
    help="Users needed for a behaviour to count in a video chunk. Default \"2\"."
)

common.add_argument(
    '--spherical-threshold',
    default=0.35, type=float,
    help="Clique baseline: chunks closer than this (rad) are linked. Default \"0.35\"."
)

common.add_argument(
    '--trajectory-sigma',
    default=0.5, type=float,
    help="Spectral baseline affinity scale (rad). Default \"0.5\"."
)

common.add_argument(
    '--trajectory-k-max',
    default=8, type=int,
    help="Spectral baseline tries 1..k_max clusters. Default \"8\"."
)

common.add_argument(
    '--dbscan-eps',
    default=0.3, type=float,
    help="DBSCAN neighbourhood radius (rad). Default \"0.3\"."
)

common.add_argument(
    '--dbscan-min-pts',
    default=2, type=int,
    help="DBSCAN core point size. Default \"2\"."
)

common.add_argument(
    '--standardize-video',
    default=False, type=str_to_bool,
    help="Z-score the population vectors before categorizing video chunks. Default \"False\"."
)

common.add_argument(
    '--heatmap-cell-deg',
    default=1.0, type=float,
    help="Heatmap cell size in degrees. Default \"1\"."
)


parser = CustomParser(prog='viewport.py', fromfile_prefix_chars='@',
                      description="Head orientation trace analysis of 360 degree videos.")
subparsers = parser.add_subparsers(dest='command', metavar='command')
subparsers.required = True

subparsers.add_parser('unify', parents=[common], help="Parse and resample the traces of a manifest.")
subparsers.add_parser('features', parents=[common], help="Build the behavioural feature table.")
subparsers.add_parser('cluster-viewports', parents=[common], help="Cluster the trace chunks into behaviours.")
subparsers.add_parser('categorize', parents=[common], help="Cluster the video chunks into categories.")

evaluate_parser = subparsers.add_parser('evaluate', parents=[common], help="Write an evaluation report.")
evaluate_parser.add_argument(
    '--which',
    required=True, type=str, choices=EVALUATIONS,
    help="Report to produce."
)
evaluate_parser.add_argument(
    '--videos',
    default=None, type=str_to_int_list,
    help="Comma separated video ids the baseline comparison is restricted to. Default \"None\" (all)."
)

heatmap_parser = subparsers.add_parser('heatmap', parents=[common], help="Render a cluster or category heatmap.")
selector = heatmap_parser.add_mutually_exclusive_group(required=True)
selector.add_argument(
    '--cluster',
    default=None, type=int,
    help="Behaviour cluster m to draw."
)
selector.add_argument(
    '--category',
    default=None, type=int,
    help="Video category q to draw."
)


def _config_option(argv):
    for position, argument in enumerate(argv):
        if argument == '--config' and position + 1 < len(argv):
            return argv[position + 1]
        if argument.startswith('--config='):
            return argument.split('=', 1)[1]
    return None


def parse_command_line(argv):
    """
    Parses a command line. The arguments of a `--config` file are placed
    right after the command, so flags given on the command line win.
    :param argv: arguments without the program name
    """
    argv = list(argv)
    config_file = _config_option(argv)
    if config_file is not None and argv and argv[0] in COMMANDS:
        argv = argv[:1] + common.read_config_file(config_file) + argv[1:]
    return parser.parse_args(argv)


class PipelineConfig(object):
    """
    Validated settings of one run.
    """

    def __init__(self, **values):
        self.__dict__.update(values)

    @classmethod
    def from_args(cls, args):
        values = {action.dest: action.default for action in common._actions if action.dest != 'help'}
        values.update({key: value for key, value in vars(args).items()})
        config = cls(**values)
        config.validate()
        return config

    def validate(self):
        if self.rate_hz <= 0 or self.chunk_seconds <= 0:
            err("rate_hz and chunk_seconds must be positive")
        if self.max_chunks < 1:
            err("max_chunks must be at least 1")
        if not 2 <= self.m_min <= self.m_max:
            err("empty behaviour cluster range {}..{}".format(self.m_min, self.m_max))
        if not 2 <= self.q_min <= self.q_max:
            err("empty video category range {}..{}".format(self.q_min, self.q_max))
        for name in ('fixed_m', 'fixed_q'):
            if getattr(self, name) is not None and getattr(self, name) < 1:
                err("{} must be at least 1".format(name))
        if self.n_init < 1 or self.max_iter < 1 or self.sample_cap < 1:
            err("n_init, max_iter and sample_cap must be positive")
        for name in ('coverage_cell_deg', 'heatmap_cell_deg'):
            cell = getattr(self, name)
            if cell <= 0 or abs(180.0 / cell - round(180.0 / cell)) > 1e-9:
                err("{} must divide 180 degrees".format(name))
        try:
            self.viewport = ViewportSpec.from_degrees(self.viewport_yaw_deg, self.viewport_pitch_deg)
        except TraceValidationError as e:
            err("invalid viewport: {}".format(e))

    @property
    def m_range(self):
        return range(self.m_min, self.m_max + 1)

    @property
    def q_range(self):
        return range(self.q_min, self.q_max + 1)

    @property
    def chunk_samples(self):
        return int(round(self.chunk_seconds * self.rate_hz))

    def stage_params(self, stage):
        """
        Settings a stage's outputs depend on, used to validate its cache.
        """
        shared = {'rate_hz': self.rate_hz}
        chunking = dict(shared, chunk_seconds=self.chunk_seconds, max_chunks=self.max_chunks,
                        viewport_yaw_deg=self.viewport_yaw_deg, viewport_pitch_deg=self.viewport_pitch_deg,
                        coverage_cell_deg=self.coverage_cell_deg)
        kmeans = {'seed': self.seed, 'n_init': self.n_init, 'max_iter': self.max_iter, 'tol': self.tol,
                  'stability_tolerance': self.stability_tolerance, 'outlier_sigma': self.outlier_sigma}
        if stage == 'unify':
            return shared
        if stage == 'features':
            return chunking
        if stage == 'cluster-viewports':
            return dict(chunking, m_min=self.m_min, m_max=self.m_max, fixed_m=self.fixed_m, **kmeans)
        if stage == 'categorize':
            return dict(q_min=self.q_min, q_max=self.q_max, fixed_q=self.fixed_q,
                        standardize_video=self.standardize_video, **kmeans)
        raise ConfigurationError("unknown stage '{}'".format(stage))

    def __repr__(self):
        return 'PipelineConfig({})'.format(', '.join(
            '{}={}'.format(key, value) for key, value in sorted(self.__dict__.items()) if key != 'viewport'))


def default_config(**overrides):
    """
    PipelineConfig with every default, updated with `overrides`.
    """
    args = argparse.Namespace(**{action.dest: action.default for action in common._actions
                                 if action.dest != 'help'})
    for key, value in overrides.items():
        setattr(args, key, value)
    return PipelineConfig.from_args(args)

