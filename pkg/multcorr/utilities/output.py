#!/usr/bin/env python
'''Formatting and writing of results: 12 significant digit floats, JSON and
CSV documents, and the run manifest that accompanies every command line run.
'''
from __future__ import absolute_import

import dataclasses
import hashlib
import json
import math
import sys

import numpy as np

SIG_DIGITS = 12


def format_float(value, alternate=False):
    '''Formats <value> with 12 significant digits. If <alternate> is True,
    trailing zeros are kept and values in [0.1, 10) get 12 decimals, so that
    1 prints as 1.000000000000.
    '''

    if alternate:
        if 0.1 <= abs(value) < 10:
            return '{:.{}f}'.format(value, SIG_DIGITS)
        return '{:#.{}g}'.format(value, SIG_DIGITS)
    return '{:.{}g}'.format(value, SIG_DIGITS)


def round_sig(value):
    '''Rounds a float to 12 significant digits, so that the JSON writer emits
    the same digits as <format_float>.
    '''

    if value == 0 or not math.isfinite(value):
        return value
    return float(format_float(value))


def to_jsonable(obj):
    '''Recursively converts dataclasses, numpy scalars and arrays into plain
    Python objects suitable for <json.dumps>.
    '''

    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return dict((f.name, to_jsonable(getattr(obj, f.name)))
                                    for f in dataclasses.fields(obj) if f.repr)
    elif isinstance(obj, dict):
        return dict((str(k), to_jsonable(v)) for k, v in obj.items())
    elif isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    elif isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    elif isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    elif isinstance(obj, (int, np.integer)):
        return int(obj)
    elif isinstance(obj, (float, np.floating)):
        value = float(obj)
        if not math.isfinite(value):
            return None
        return round_sig(value)
    return obj


def dumps_json(obj):
    return json.dumps(to_jsonable(obj), sort_keys=True)


def dumps_human(obj):
    '''One "key: value" line per field of a (possibly nested) record.
    '''

    lines = []
    plain = to_jsonable(obj)
    if not isinstance(plain, dict):
        plain = {'value': plain}

    for key in sorted(plain):
        value = plain[key]
        if isinstance(value, float):
            value = format_float(value)
        elif isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        lines.append('{}: {}'.format(key, value))

    return '\n'.join(lines)


def dumps_csv(header, rows):
    '''Header line followed by one comma separated line per row.
    '''

    lines = [','.join(header)]
    for row in rows:
        cells = []
        for cell in row:
            if cell is None:
                cells.append('')
            elif isinstance(cell, (float, np.floating)):
                cells.append(format_float(float(cell)))
            else:
                cells.append(str(cell))
        lines.append(','.join(cells))

    return '\n'.join(lines)


@dataclasses.dataclass
class RunManifest:
    subcommand: str
    flags: dict
    version: str
    seed: object
    wall_time: float
    checksum: str

    def to_json(self):
        return dumps_json(self)


def checksum(text):
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def emit(text, stream=None):
    '''Writes the primary output <text> (with a trailing newline) and returns
    its checksum for the run manifest.
    '''

    if stream is None:
        stream = sys.stdout
    stream.write(text)
    if not text.endswith('\n'):
        stream.write('\n')
    stream.flush()
    return checksum(text)
