#!/usr/bin/env python
'''Control files for experiments. A control file is a flat list of key=value
cards, eg.

    # Erdos-Pomerance at a = b = 1/2
    experiment = erdos_pomerance
    x = 1e7
    a = 0.5
    b = 0.5

Cards not given take their defaults; command line flags override the file.
<load_config> turns the cards into an <ExperimentConfig>; <ExperimentSim> also
runs the experiment (or a sweep) and writes the result.
'''
from __future__ import absolute_import

import logging

from multcorr.dickmann.rho import default_table
from multcorr.experiments.experiments import EXPERIMENTS, ExperimentConfig, PARAMETER_TYPES, \
                                            ShiftCorrelation, run_experiment, sweep
from multcorr.sieve.factor_sieve import DEFAULT_SEGMENT
from multcorr.dickmann.integrals import DEFAULT_NODES, DEFAULT_SEED
from multcorr.utilities.control_functions import control_file, handle_cards, parse_sweep, \
                                                            print_control, to_int
from multcorr.utilities.errors import ConfigError, UsageError
from multcorr.utilities.output import dumps_csv, dumps_human, dumps_json

logger = logging.getLogger(__name__)

FORMATS = ('human', 'json', 'csv')


def _threads(in_str):
    # 0 leaves the choice to $MULTCORR_THREADS
    value = to_int(in_str)
    return value if value > 0 else None


# cards shared by every experiment. Experiment parameters default to '', which
# marks them as absent
config_cards = (('x', {'default': 10**6, 'type': to_int}),
                ('omega', {'default': 'logx', 'type': str}),
                ('window', {'default': 'full', 'type': str}),
                ('weighting', {'default': '', 'type': str}),
                ('seed', {'default': DEFAULT_SEED, 'type': to_int}),
                ('nodes', {'default': DEFAULT_NODES, 'type': to_int}),
                ('segment_size', {'default': DEFAULT_SEGMENT, 'type': to_int}),
                ('threads', {'default': 0, 'type': _threads}),
               ) + tuple((name, {'default': '', 'type': kind})
                         for name, kind in sorted(PARAMETER_TYPES.items()))


def run_cards(require_name=False):
    '''Cards that say what to do with the configuration. <experiment> is
    mission-critical for <ExperimentSim>.
    '''

    return (('experiment', {'default': None if require_name else '', 'type': str}),
            ('sweep', {'default': '', 'type': str}),
            ('format', {'default': 'json', 'type': str}),
            ('output', {'default': '', 'type': str}),
           )


def config_from_cards(cards):
    parameters = dict((name, cards[name]) for name in PARAMETER_TYPES
                                                    if cards[name] != '')
    return ExperimentConfig(x=cards['x'], omega=cards['omega'], window=cards['window'],
                            weighting=cards['weighting'] or None, parameters=parameters,
                            seed=cards['seed'], nodes=cards['nodes'],
                            segment_size=cards['segment_size'],
                            threads=cards['threads'] or None)


def read_cards(filename=None, overrides=None, require_name=False):
    '''Typed cards from the control file <filename> (no file: all defaults),
    with <overrides> taking precedence.
    '''

    raw = control_file(filename) if filename else dict()
    cards = handle_cards(raw, config_cards + run_cards(require_name), overrides)
    print_control(cards)
    return cards


def load_config(filename=None, overrides=None):
    '''Reads an <ExperimentConfig> from a control file.
    '''

    return config_from_cards(read_cards(filename, overrides))


def render(result, fmt='json', name=None):
    '''Formats the result of <run_experiment> as human readable text, JSON or
    CSV. Results holding several estimates are written as
    {"experiment": <name>, "estimates": [...]}.
    '''

    if fmt not in FORMATS:
        raise UsageError("{} is not a valid output format".format(fmt))

    if isinstance(result, tuple):
        estimates = list(result)
    elif isinstance(result, list):
        estimates = [est for _, est in result]
    else:
        estimates = [result]

    if fmt == 'json':
        if len(estimates) == 1:
            return dumps_json(estimates[0])
        return dumps_json({'experiment': name, 'estimates': estimates})
    elif fmt == 'human':
        return '\n\n'.join(dumps_human(est) for est in estimates)

    if isinstance(result, ShiftCorrelation):
        header = ('label', 'x', 'window', 'epsilon', 'y', 'value')
        return dumps_csv(header, [tuple(getattr(result, h) for h in header)])

    header = ('label', 'x', 'weighting', 'window', 'estimate', 'target', 'abs_error',
              'target_error', 'weight')
    return dumps_csv(header, [tuple(getattr(est, h) for h in header) for est in estimates])


def render_sweep(name, param, rows, fmt='csv'):
    if fmt == 'json':
        return dumps_json({'experiment': name, 'param': param,
                           'rows': [dict(zip(('value', 'estimate', 'target', 'abs_error'), r))
                                                                        for r in rows]})
    return dumps_csv(('param', 'estimate', 'target', 'abs_error'), rows)


class ExperimentSim(object):
    # runs the experiment described by a control file

    def __init__(self, filename, overrides=None):
        self.sim = read_cards(filename, overrides, require_name=True)
        self.control = lambda card: self.sim[card]

        if self.control('experiment') not in EXPERIMENTS:
            raise ConfigError("{} is not a known experiment".format(self.control('experiment')))

        self.cfg = config_from_cards(self.sim)
        self.table = default_table()

        if self.control('sweep'):
            self.run_sweep()
        else:
            self.run_sim()

        self.write_output()

    def run_sim(self):
        logger.info("Running %s at x = %d", self.control('experiment'), self.cfg.x)
        self.result = run_experiment(self.control('experiment'), self.cfg, self.table)
        self.text = render(self.result, self.control('format'), self.control('experiment'))

    def run_sweep(self):
        self.param, values = parse_sweep(self.control('sweep'))
        logger.info("Sweeping %s over %d values", self.param, len(values))
        self.result = sweep(self.control('experiment'), self.cfg, self.param, values,
                                                                        self.table)
        fmt = 'json' if self.control('format') == 'json' else 'csv'
        self.text = render_sweep(self.control('experiment'), self.param, self.result, fmt)

    def write_output(self):
        '''Writes the formatted result to the <output> card, if one was given.
        '''

        if not self.control('output'):
            return

        with open(self.control('output'), 'w') as outstream:
            outstream.write(self.text + '\n')
