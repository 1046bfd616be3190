import io

import numpy as np

from ..exception import InsufficientDataError
from ..exception import TraceParseError
from .orientation import DEFAULT_FRAME
from .orientation import normalize_quaternions
from .orientation import yaw_pitch_from_euler
from .orientation import yaw_pitch_from_quaternions
from .samples import FORMAT_TAGS
from .samples import ViewportTrace

# accepted column counts per format; euler roll is optional
_COLUMNS = {
    'quaternion_csv': (5,),
    'euler_csv': (3, 4),
}


def _text_lines(raw_file):
    if isinstance(raw_file, (bytes, bytearray)):
        raw_file = io.BytesIO(raw_file)
    for line in raw_file:
        if isinstance(line, bytes):
            line = line.decode('utf-8')
        yield line


def _is_header(fields):
    for field in fields:
        try:
            float(field)
            return False
        except ValueError:
            continue
    return True


def read_rows(raw_file, format_tag):
    """
    Reads the numeric rows of a delimited trace file. Blank lines and `#`
    comments are skipped, as is a header on the first content line.
    :return: (rows as float array, line number of every row)
    """
    widths = _COLUMNS[format_tag]
    rows = []
    line_numbers = []
    first_content = True
    for number, line in enumerate(_text_lines(raw_file), start=1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        fields = [field.strip() for field in line.replace(';', ',').split(',')]
        if first_content:
            first_content = False
            if _is_header(fields):
                continue
        if len(fields) not in widths:
            raise TraceParseError("expected {} columns, found {}".format(
                ' or '.join(str(w) for w in widths), len(fields)), number)
        try:
            values = [float(field) for field in fields]
        except ValueError:
            raise TraceParseError("non numeric value in '{}'".format(line), number)
        if not np.all(np.isfinite(values)):
            raise TraceParseError("non finite value in '{}'".format(line), number)
        # euler roll is discarded
        rows.append(values[:3] if format_tag == 'euler_csv' else values)
        line_numbers.append(number)

    return np.array(rows, dtype=np.float64).reshape(len(rows), -1), line_numbers


def parse_trace(raw_file, format_tag, video_id=0, user_id=0, degrees=False, frame=DEFAULT_FRAME):
    """
    Parses one raw trace file into canonical yaw / pitch radians.

    :param raw_file: bytes or a (binary or text) file object
    :param format_tag: 'quaternion_csv' rows are (t, qw, qx, qy, qz);
                       'euler_csv' rows are (t, yaw, pitch[, roll])
    :param degrees: euler angles are in degrees
    :param frame: SourceFrame of the recording device, for quaternions
    :rtype: ViewportTrace
    """
    if format_tag not in FORMAT_TAGS:
        raise TraceParseError("unknown format tag '{}'".format(format_tag))
    rows, line_numbers = read_rows(raw_file, format_tag)
    if len(rows) < 2:
        raise InsufficientDataError("trace ({}, {}) has {} samples, at least 2 are needed".format(
            video_id, user_id, len(rows)))

    t = rows[:, 0]
    stalled = np.flatnonzero(np.diff(t) <= 0)
    if len(stalled) > 0:
        index = int(stalled[0]) + 1
        raise TraceParseError("timestamp {} does not increase".format(t[index]), line_numbers[index])
    if t[0] < 0:
        raise TraceParseError("negative timestamp {}".format(t[0]), line_numbers[0])

    if format_tag == 'quaternion_csv':
        quaternions = normalize_quaternions(rows[:, 1:5], line_numbers=line_numbers)
        yaw, pitch = yaw_pitch_from_quaternions(quaternions, frame)
    else:
        yaw, pitch = yaw_pitch_from_euler(rows[:, 1], rows[:, 2], degrees=degrees)

    return ViewportTrace(video_id, user_id, t, yaw, pitch)
