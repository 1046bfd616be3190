import hashlib
import os

import yaml

from ..custom_logging.logger import logger

ARTIFACTS_FILE = 'artifacts.yaml'


def file_digest(path):
    """
    SHA-256 of a file's contents, or of every file under a directory in
    sorted relative-path order.
    """
    sha = hashlib.sha256()
    if os.path.isdir(path):
        for root, dirs, files in os.walk(path):
            dirs.sort()
            for name in sorted(files):
                file_path = os.path.join(root, name)
                sha.update(os.path.relpath(file_path, path).replace(os.sep, '/').encode('utf-8'))
                sha.update(file_digest(file_path).encode('ascii'))
        return sha.hexdigest()
    with open(path, 'rb') as stream:
        for block in iter(lambda: stream.read(1 << 20), b''):
            sha.update(block)
    return sha.hexdigest()


class RunArtifacts(object):
    """
    Per stage: content hashes of the input and output files, the parameters
    the stage depends on and the seed. Paths inside the run folder are stored
    relative to it.
    """

    def __init__(self, stages=None):
        self.stages = dict(stages or {})

    @classmethod
    def load(cls, path):
        if not os.path.exists(path):
            return cls()
        with open(path) as artifacts_file:
            return cls((yaml.safe_load(artifacts_file) or {}).get('stages'))

    def save(self, path):
        with open(path, 'w', newline='\n') as artifacts_file:
            yaml.safe_dump({'stages': self.stages}, artifacts_file, sort_keys=True, default_flow_style=False)

    def outputs(self, stage):
        return sorted(self.stages.get(stage, {}).get('outputs', {}))


class RunManagement:
    # every artifact of one run lives below `out_dir`

    def __init__(self, config):
        self.config = config
        self._run_folder = os.path.abspath(config.out_dir)

    def create_run_folders(self):
        for folder in (self.run_folder, self.store_folder, self.features_folder,
                       self.models_folder, self.reports_folder, self.heatmaps_folder):
            os.makedirs(folder, exist_ok=True)

    @property
    def run_folder(self):
        return self._run_folder

    @property
    def store_folder(self):
        return os.path.join(self._run_folder, 'store')

    @property
    def features_folder(self):
        return os.path.join(self._run_folder, 'features')

    @property
    def models_folder(self):
        return os.path.join(self._run_folder, 'models')

    @property
    def reports_folder(self):
        return os.path.join(self._run_folder, 'reports')

    @property
    def heatmaps_folder(self):
        return os.path.join(self._run_folder, 'heatmaps')

    @property
    def f1_path(self):
        return os.path.join(self.features_folder, 'f1.csv')

    @property
    def f2_path(self):
        return os.path.join(self.features_folder, 'f2.csv')

    @property
    def viewport_model_path(self):
        return os.path.join(self.models_folder, 'viewport_model.yaml')

    @property
    def video_model_path(self):
        return os.path.join(self.models_folder, 'video_model.yaml')

    @property
    def artifacts_path(self):
        return os.path.join(self._run_folder, ARTIFACTS_FILE)

    @property
    def config_path(self):
        return os.path.join(self._run_folder, 'config.txt')

    @property
    def log_path(self):
        return os.path.join(self._run_folder, 'viewport.log')

    def report_path(self, name):
        return os.path.join(self.reports_folder, name)

    def _relative(self, path):
        path = os.path.abspath(path)
        if path.startswith(self._run_folder + os.sep):
            return os.path.relpath(path, self._run_folder).replace(os.sep, '/')
        return path

    def _absolute(self, path):
        return path if os.path.isabs(path) else os.path.join(self._run_folder, path)

    def _digests(self, paths):
        return {self._relative(path): file_digest(path) for path in paths}

    def stage_is_current(self, stage, inputs, params):
        """
        True when the stage ran before with the same parameters, its inputs
        still hash the same and its outputs are unchanged on disk.
        """
        record = RunArtifacts.load(self.artifacts_path).stages.get(stage)
        if record is None or record.get('params') != params:
            return False
        if any(not os.path.exists(path) for path in inputs):
            return False
        if record.get('inputs') != self._digests(inputs):
            return False
        for path, digest in record.get('outputs', {}).items():
            path = self._absolute(path)
            if not os.path.exists(path) or file_digest(path) != digest:
                return False
        logger.info(f'Stage {stage} is up to date, reusing its outputs')
        return True

    def record_stage(self, stage, inputs, outputs, params):
        """
        Stores the hashes of a finished stage. Downstream stages notice the
        new outputs through their own input hashes.
        """
        artifacts = RunArtifacts.load(self.artifacts_path)
        artifacts.stages[stage] = {
            'inputs': self._digests(inputs),
            'outputs': self._digests(outputs),
            'params': params,
            'seed': self.config.seed,
        }
        artifacts.save(self.artifacts_path)

    def stage_outputs(self, stage):
        return [self._absolute(path) for path in RunArtifacts.load(self.artifacts_path).outputs(stage)]

    def export_table(self, name, frame):
        path = self.report_path(name)
        frame.to_csv(path, index=False, float_format='%.17g', lineterminator='\n')
        return path

    def export_summary(self, name, values):
        path = self.report_path(name)
        with open(path, 'w', newline='\n') as summary_file:
            yaml.safe_dump(values, summary_file, sort_keys=True, default_flow_style=False)
        return path
