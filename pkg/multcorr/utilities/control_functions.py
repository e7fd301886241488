#!/usr/bin/env python
'''Contains all generic functions used by <multcorr> control programs, such as
<_experiment_control> and the command line driver: reading flat key=value
control files, converting cards to their declared types and parsing the small
expression languages (window functions, parameter lists, sweep ranges) shared by
the library and the command line.
'''
from __future__ import absolute_import, print_function

import logging
import math
import re

import numpy as np

from multcorr.utilities.errors import ConfigError, UsageError

logger = logging.getLogger(__name__)

input_style = re.compile(r'^\s*(?P<par>[A-Za-z_][\w.]*)\s*=\s*[\'"]?(?P<value>[^\'"]*?)[\'"]?\s*$')


def control_file(filename):
    '''Opens the control file <filename> and constructs a dictionary mapping
    each card to a tuple (unformatted value, line number). Blank lines and lines
    starting with # are ignored, as is anything following a # on a line.
    '''

    sim_parameters = dict()
    with open(filename) as f:
        for lineno, line in enumerate(f, start=1):
            temp = line.split('#', 1)[0].strip()
            if not temp:
                continue

            inp = re.search(input_style, temp)
            if inp is None:
                raise ConfigError('cannot parse "{}" as key=value'.format(temp),
                                                                    lineno)

            par = inp.group('par')
            if par in sim_parameters:
                raise ConfigError('duplicate key "{}" (first set on line {})'.format(
                                            par, sim_parameters[par][1]), lineno)

            sim_parameters[par] = (inp.group('value').strip(), lineno)

    return sim_parameters


def to_bool(in_str):
    '''Routine to convert <in_str>, which may take the values "True" or "False",
    a boolean (needed because bool("False") == True)
    '''

    if isinstance(in_str, bool):
        return in_str

    bool_vals = {"true": True, "false": False, "1": True, "0": False}

    try:
        new_value = bool_vals[str(in_str).strip().lower()]
    except KeyError:
        raise ValueError("{} is not a boolean value.".format(in_str))

    return new_value


def to_int(in_str):
    '''Converts <in_str> to an integer, accepting scientific notation such as
    "1e7" provided that the value is integral.
    '''

    if isinstance(in_str, (int, np.integer)):
        return int(in_str)

    if not isinstance(in_str, (float, np.floating)):
        try:
            return int(in_str)
        except ValueError:
            pass

    value = float(in_str)
    if not math.isfinite(value) or value != math.floor(value):
        raise ValueError("{} is not an integer.".format(in_str))

    return int(value)


def change_type(param_dict, card, new_type):
    '''Converts the string in the specified <card> to the required type,
    replacing it in place.
    '''

    value = param_dict[card]
    try:
        param_dict[card] = new_type(value)
    except (TypeError, ValueError) as e:
        raise ConfigError('invalid value "{}" for card {}: {}'.format(value, card, e))

    return


def handle_cards(raw, cards, overrides=None):
    '''Builds a dictionary of typed card values from the raw output of
    <control_file>, using the card table <cards>. Each entry of <cards> has the
    form (name, {'default': ..., 'type': ...}). If the default value is <None>,
    the card is considered "mission critical" and an error is raised if no value
    is provided. Values in <overrides> (eg. from command line flags) take
    precedence over the control file. Unknown keys are an error.
    '''

    if overrides is None:
        overrides = dict()

    known = set(name for name, _ in cards)
    for key, (value, lineno) in raw.items():
        if key not in known:
            raise ConfigError('unknown key "{}"'.format(key), lineno)

    params = dict()
    for name, card in cards:
        if name in overrides and overrides[name] is not None:
            params[name] = overrides[name]
        elif name in raw:
            value, lineno = raw[name]
            try:
                params[name] = card['type'](value)
            except (TypeError, ValueError) as e:
                raise ConfigError('invalid value "{}" for {}: {}'.format(value,
                                                                name, e), lineno)
            continue
        elif card['default'] is None:
            raise ConfigError("No value supplied for mission-critical" +
                                              " variable {}.".format(name))
        else:
            params[name] = card['default']
            continue

        change_type(params, name, card['type'])

    return params


def print_control(control_dict, print_types=True):
    '''Log the values of each card in <control_dict> including, optionally,
    their types. Useful mainly as a debugging tool if adding new cards.
    '''

    for key in sorted(control_dict):
        if print_types:
            logger.debug("CARD: %s VALUE: %s TYPE: %s", key, control_dict[key],
                                                     type(control_dict[key]).__name__)
        else:
            logger.debug("CARD: %s VALUE: %s", key, control_dict[key])

    return


class Omega(object):
    '''Window function omega(x) used to set the averaging window [x/omega, x].
    <kind> is one of "logx", "log3x" or "const".
    '''

    def __init__(self, kind, const=None):
        if kind not in ('logx', 'log3x', 'const'):
            raise UsageError('{} is not a valid window function.'.format(kind))
        self.kind = kind
        self.const = const

    def __call__(self, x):
        if self.kind == 'logx':
            return math.log(x)
        elif self.kind == 'log3x':
            return math.log(3*x)
        return self.const

    def __str__(self):
        if self.kind == 'const':
            return 'const:{}'.format(self.const)
        return self.kind

    def __repr__(self):
        return 'Omega({})'.format(str(self))

    def __eq__(self, other):
        return isinstance(other, Omega) and str(self) == str(other)

    def __hash__(self):
        return hash(str(self))


def parse_omega(expr):
    '''Parses a window function expression: "logx", "log3x" or "const:c".
    '''

    if isinstance(expr, Omega):
        return expr

    temp = str(expr).strip().lower()
    if temp in ('logx', 'log3x'):
        return Omega(temp)
    elif temp.startswith('const:'):
        try:
            c = float(temp.split(':', 1)[1])
        except ValueError:
            raise UsageError('cannot read constant in window function "{}"'.format(expr))
        if not math.isfinite(c) or c < 1:
            raise UsageError('constant window function must be >= 1, got {}'.format(c))
        return Omega('const', c)

    raise UsageError('{} is not a valid window function (use logx, log3x or const:c)'.format(expr))


def parse_params(in_str):
    '''Parses a comma separated list of name=value pairs into a dictionary.
    Values are left as strings; conversion is done against a card table.
    '''

    params = dict()
    if not in_str:
        return params

    for token in in_str.split(','):
        token = token.strip()
        if not token:
            continue
        if '=' not in token:
            raise UsageError('parameter "{}" is not of the form name=value'.format(token))
        name, value = token.split('=', 1)
        name = name.strip()
        if name in params:
            raise UsageError('parameter {} given more than once'.format(name))
        params[name] = value.strip()

    return params


def parse_sweep(in_str):
    '''Parses a sweep specification "name=start:stop:step" into the parameter
    name and an array of values from <start> to <stop> inclusive.
    '''

    found = re.match(r'^\s*(?P<name>\w+)\s*=\s*(?P<start>[^:]+):(?P<stop>[^:]+):(?P<step>[^:]+)\s*$',
                                                                        in_str)
    if found is None:
        raise UsageError('sweep "{}" is not of the form name=start:stop:step'.format(in_str))

    try:
        start, stop, step = (float(found.group(g)) for g in ('start', 'stop', 'step'))
    except ValueError:
        raise UsageError('sweep "{}" has a non-numeric bound'.format(in_str))

    if step <= 0 or stop < start:
        raise UsageError('sweep "{}" must have step > 0 and stop >= start'.format(in_str))

    n = int(math.floor((stop - start)/step + 1e-9)) + 1
    values = start + step*np.arange(n)
    return found.group('name'), np.round(values, 12)


def resolve_omega(omega, x):
    '''Value of the window function at <x>. <omega> may be a number, an
    <Omega> or an expression understood by <parse_omega>.
    '''

    if isinstance(omega, (int, float, np.integer, np.floating)) and not isinstance(omega, bool):
        return float(omega)
    return parse_omega(omega)(x)
