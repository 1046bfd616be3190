import logging
import sys

_FORMAT = '[%(asctime)s %(name)10s] %(levelname)-8s %(message)s'


def create_logger(name='pyviewport', level=logging.INFO, handlers=None):
    _logger = logging.getLogger(name)
    _logger.setLevel(level)
    handlers = logging.StreamHandler(sys.stdout) if handlers is None else handlers
    handlers = [handlers] if type(handlers) is not list else handlers
    for handler in handlers:
        handler.setLevel(level)
        handler.setFormatter(logging.Formatter(_FORMAT))
        _logger.addHandler(handler)
    return _logger


def add_file_handler(path, level=None):
    """
    Mirrors the log of the current run into `path`. Returns the handler so the
    caller can detach it once the run is over.
    :param path: log file, opened in append mode
    :param level: defaults to the level of the package logger
    """
    handler = logging.FileHandler(path, mode='a')
    handler.setLevel(logger.level if level is None else level)
    handler.setFormatter(logging.Formatter(_FORMAT))
    logger.addHandler(handler)
    return handler


def set_level(level):
    logger.setLevel(level)
    for handler in logger.handlers:
        handler.setLevel(level)


# General logger to standard output
logger = create_logger(name='pyviewport', level=logging.INFO)
