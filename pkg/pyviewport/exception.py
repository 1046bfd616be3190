class ViewportException(Exception):
    """
    Base of every error raised by pyviewport. The CLI turns these into a
    logged message and a non-zero exit status.
    """
    pass


class TraceParseError(ViewportException):
    def __init__(self, msg, line=None):
        self.line = line
        if line is not None:
            msg = "line {}: {}".format(line, msg)
        super(TraceParseError, self).__init__(msg)


class TraceValidationError(ViewportException):
    pass


class InsufficientDataError(ViewportException):
    pass


class DimensionMismatchError(ViewportException):
    pass


class ClusteringError(ViewportException):
    pass


class ConfigurationError(ViewportException):
    pass


class StageError(ViewportException):
    """
    A pipeline stage cannot run because an upstream artifact is missing.
    `hint` tells the user which command produces it.
    """
    def __init__(self, msg, hint=None):
        self.hint = hint
        if hint:
            msg = "{} (hint: {})".format(msg, hint)
        super(StageError, self).__init__(msg)


def err(msg):
    """
    Simple internal error function for invalid settings
    :param msg:
    """
    raise ConfigurationError("Error: {}".format(msg))
