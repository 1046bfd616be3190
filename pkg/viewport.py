#!/usr/bin/env python3
import logging
import sys

from pyviewport.config import CustomParser
from pyviewport.config import PipelineConfig
from pyviewport.config import parse_command_line
from pyviewport.custom_logging.logger import add_file_handler
from pyviewport.custom_logging.logger import logger
from pyviewport.custom_logging.logger import set_level
from pyviewport.exception import ViewportException
from pyviewport.pipeline import RunManagement
from pyviewport.pipeline import cmd_categorize
from pyviewport.pipeline import cmd_cluster_viewports
from pyviewport.pipeline import cmd_evaluate
from pyviewport.pipeline import cmd_features
from pyviewport.pipeline import cmd_heatmap
from pyviewport.pipeline import cmd_unify


def run(arguments):
    config = PipelineConfig.from_args(arguments)
    management = RunManagement(config)
    management.create_run_folders()
    CustomParser.record(arguments, management.config_path)

    handler = add_file_handler(management.log_path)
    try:
        if arguments.command == 'unify':
            return cmd_unify(config, management)
        if arguments.command == 'features':
            return cmd_features(config, management)
        if arguments.command == 'cluster-viewports':
            return cmd_cluster_viewports(config, management)
        if arguments.command == 'categorize':
            return cmd_categorize(config, management)
        if arguments.command == 'evaluate':
            return cmd_evaluate(config, management, arguments.which, arguments.videos)
        if arguments.command == 'heatmap':
            return cmd_heatmap(config, management, arguments.cluster, arguments.category)
    finally:
        logger.removeHandler(handler)
        handler.close()


def main(argv=None):
    """
    :return: exit status, 0 on success, 1 when the run failed, 2 on a usage error
    """
    try:
        arguments = parse_command_line(sys.argv[1:] if argv is None else argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    except ViewportException as e:
        logger.error(str(e))
        return 2

    set_level(getattr(logging, arguments.log_level))
    try:
        run(arguments)
    except ViewportException as e:
        logger.error(f'{arguments.command} failed: {e}')
        return 1
    except KeyboardInterrupt:
        logger.warning("Got CtrlC, shutting down.")
        return 1
    return 0


if __name__ == '__main__':
    sys.exit(main())
