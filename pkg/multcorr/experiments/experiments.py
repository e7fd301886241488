#!/usr/bin/env python
'''Named experiments comparing density estimates for events defined by the
largest prime factors of consecutive integers with their limiting values,
computed from the Dickman function.

Every experiment takes an <ExperimentConfig> and an optional <RhoTable> (the
default table has step 1e-3) and returns one or more <DensityEstimate>s.

    omega_joint          omega_{>n^a}(n) = k and omega_{>n^b}(n + 1) = l
    erdos_pomerance      P+(n) <= n^a and P+(n + 1) <= n^b
    erdos_turan          P+(n) < P+(n + 1)
    alpha_shift          P+(n + 1) > P+(n)*n^alpha
    hildebrand_rect      n^a < P+(n) <= n^b and n^c < P+(n + 1) <= n^d
    ordering             each ordering of P+(n + 1), ..., P+(n + k)
    truncated_liouville  correlation of lambda_{>x^eps} with its shift
'''
from __future__ import absolute_import

import dataclasses
import difflib
import logging
import math

from multcorr.arith.correlate import MIN_X, CorrelationRequest, chain_windows, \
                                                full_log_correlation, log_correlation
from multcorr.arith.multfunc import truncated_liouville_gt
from multcorr.dickmann.integrals import DEFAULT_NODES, DEFAULT_SEED, IntegralRequest, \
                                        integral_I_result, integral_T_result, rect_density
from multcorr.dickmann.rho import default_table
from multcorr.experiments import density
from multcorr.experiments.density import DensityEstimate, Orderings, WEIGHTINGS, WINDOWS
from multcorr.sieve.factor_sieve import DEFAULT_SEGMENT
from multcorr.utilities.control_functions import parse_omega, to_int
from multcorr.utilities.errors import CapacityError, DomainError, UsageError

logger = logging.getLogger(__name__)

MAX_ORDERING = 4

# experiment parameters and their types
PARAMETER_TYPES = {'a': float, 'b': float, 'c': float, 'd': float, 'alpha': float,
                   'eps': float, 'k': to_int, 'l': to_int, 'offset': to_int,
                   'Q': to_int, 'h': to_int}


@dataclasses.dataclass
class ExperimentConfig:
    '''Scale <x>, window function <omega> (used when <window> is "tail"),
    experiment parameters and the seed of any Monte Carlo target. <weighting>
    of None selects the experiment's own default. <bounds>, when set, are the
    integer bounds [lo, hi) of the tail window and take the place of the ones
    computed from x and omega.
    '''

    x: float = 10**6
    omega: str = 'logx'
    window: str = 'full'
    weighting: str = None
    parameters: dict = dataclasses.field(default_factory=dict)
    seed: int = DEFAULT_SEED
    nodes: int = DEFAULT_NODES
    segment_size: int = DEFAULT_SEGMENT
    threads: int = None
    bounds: tuple = None

    def __post_init__(self):
        if not self.x >= MIN_X:
            raise DomainError("x must be >= {}, got {}".format(MIN_X, self.x))
        if self.window not in WINDOWS:
            raise DomainError("{} is not a valid window (full or tail)".format(self.window))
        if self.weighting is not None and self.weighting not in WEIGHTINGS:
            raise DomainError("{} is not a valid weighting (logarithmic or natural)".format(
                                                                        self.weighting))
        parse_omega(self.omega)
        if self.bounds is not None:
            lo, hi = self.bounds
            if not (1 <= lo < hi <= int(math.floor(self.x)) + 1):
                raise DomainError("bounds [{}, {}) must lie in [1, x]".format(lo, hi))

        for name in self.parameters:
            if name not in PARAMETER_TYPES:
                raise UsageError("{} is not an experiment parameter".format(name))

    def param(self, name, default=None):
        value = self.parameters.get(name, default)
        if value is None:
            raise DomainError("experiment needs parameter {}".format(name))
        return value

    def with_parameter(self, name, value):
        '''Copy of the config with one parameter (or x) replaced.
        '''

        if name == 'x':
            return dataclasses.replace(self, x=value)
        if name not in PARAMETER_TYPES:
            raise UsageError("{} is not an experiment parameter".format(name))

        parameters = dict(self.parameters)
        try:
            parameters[name] = PARAMETER_TYPES[name](value)
        except ValueError as e:
            raise UsageError("invalid value {} for {}: {}".format(value, name, e))
        return dataclasses.replace(self, parameters=parameters)

    @property
    def scan_options(self):
        return {'segment_size': self.segment_size, 'nprocesses': self.threads}


@dataclasses.dataclass
class ShiftCorrelation:
    label: str
    x: int
    window: str
    epsilon: float
    y: float
    value: float


def _weighting(cfg, default):
    return cfg.weighting if cfg.weighting is not None else default


def _scan(cfg, classifier, nclasses, params, pad=1):
    if cfg.bounds is not None:
        lo, hi = max(cfg.bounds[0], density.FULL_START), cfg.bounds[1]
    else:
        lo, hi = density.scan_window(cfg.x, cfg.window, cfg.omega)
    logger.info("%s on [%d, %d)", classifier.__name__, lo, hi - 1)
    return density.classify(classifier, nclasses, lo, hi, params, pad=pad,
                                                                **cfg.scan_options)


def _estimate(cfg, label, sums, labels, weighting, target=None, target_error=None,
                                                                    classes=None):
    return DensityEstimate(label=label, x=int(cfg.x), weighting=weighting,
                           window=cfg.window, estimate=sums.density(weighting, labels),
                           target=target, target_error=target_error,
                           weight=sums.weight(weighting), classes=classes)


def _cells(sums, weighting, names):
    return dict(zip(names, (float(v) for v in sums.densities(weighting))))


def _unit_interval(name, value, closed=False):
    ok = (0 <= value <= 1) if closed else (0 < value < 1)
    if not ok:
        raise DomainError("{} must lie in {}, got {}".format(name,
                                            '[0, 1]' if closed else '(0, 1)', value))


def _count_density(table, alpha, k, cfg):
    '''I(alpha, k)/k! with its error estimate; 0 when k >= 1/alpha.
    '''

    result = integral_I_result(table, IntegralRequest(alpha, k, nodes=cfg.nodes,
                                                                seed=cfg.seed))
    return result.value/math.factorial(k), result.error_estimate/math.factorial(k)


def exp_omega_joint(cfg, table=None):
    '''Joint density of omega_{>n^a}(n) = k and omega_{>n^b}(n + 1) = l against
    the product of the marginal densities I(a, k)/k! * I(b, l)/l!. Returns the
    joint estimate and the product of the two empirical marginals.
    '''

    table = table or default_table()
    a, b = cfg.param('a'), cfg.param('b')
    k, l = cfg.param('k'), cfg.param('l')
    _unit_interval('a', a)
    _unit_interval('b', b)
    if k < 0 or l < 0:
        raise DomainError("k and l must be >= 0, got k = {}, l = {}".format(k, l))

    ta, ea = _count_density(table, a, k, cfg)
    tb, eb = _count_density(table, b, l, cfg)
    target, target_error = ta*tb, ta*eb + tb*ea

    weighting = _weighting(cfg, 'logarithmic')
    sums = _scan(cfg, density.joint_large_factor_count, 4, (a, b, k, l))
    cells = _cells(sums, weighting, ('neither', 'second_only', 'first_only', 'both'))

    joint = _estimate(cfg, 'omega_joint', sums, (3,), weighting, target, target_error,
                                                                        classes=cells)

    first, second = sums.density(weighting, (2, 3)), sums.density(weighting, (1, 3))
    marginals = DensityEstimate(label='omega_joint_marginals', x=int(cfg.x),
                                weighting=weighting, window=cfg.window,
                                estimate=first*second, target=target,
                                target_error=target_error, weight=joint.weight,
                                classes={'marginal_a': first, 'marginal_b': second,
                                         'target_a': ta, 'target_b': tb})
    return joint, marginals


def exp_erdos_pomerance(cfg, table=None):
    '''Density of P+(n) <= n^a and P+(n + 1) <= n^b against rho(1/a)rho(1/b).
    '''

    table = table or default_table()
    a, b = cfg.param('a'), cfg.param('b')
    _unit_interval('a', a)
    _unit_interval('b', b)

    weighting = _weighting(cfg, 'logarithmic')
    sums = _scan(cfg, density.joint_smoothness, 4, (a, b))
    target = float(table.rho(1./a))*float(table.rho(1./b))
    cells = _cells(sums, weighting, ('neither', 'second_smooth', 'first_smooth', 'both'))
    return _estimate(cfg, 'erdos_pomerance', sums, (3,), weighting, target, table.tol,
                                                                        classes=cells)


def exp_erdos_turan(cfg, table=None):
    '''Density of P+(n) < P+(n + 1) against 1/2.
    '''

    if cfg.window == 'full' and cfg.x < 10**4:
        raise DomainError("erdos_turan needs x >= 10^4, got {}".format(cfg.x))

    weighting = _weighting(cfg, 'logarithmic')
    sums = _scan(cfg, density.largest_factor_order, 3, ())
    cells = _cells(sums, weighting, ('<', '>', '='))
    return _estimate(cfg, 'erdos_turan', sums, (0,), weighting, 0.5, 0., classes=cells)


def exp_alpha_shift(cfg, table=None):
    '''Density of P+(n + 1) > P+(n)*n^alpha against T(alpha).
    '''

    table = table or default_table()
    alpha = cfg.param('alpha')
    _unit_interval('alpha', alpha, closed=True)

    target = integral_T_result(table, alpha, nodes=cfg.nodes)
    weighting = _weighting(cfg, 'logarithmic')
    sums = _scan(cfg, density.shifted_dominance, 2, (alpha,))
    cells = _cells(sums, weighting, ('outside', 'inside'))
    return _estimate(cfg, 'alpha_shift', sums, (1,), weighting, target.value,
                                            target.error_estimate, classes=cells)


def exp_hildebrand_rect(cfg, table=None):
    '''Natural density of n^a < P+(n) <= n^b, n^c < P+(n + 1) <= n^d, compared
    with the limiting logarithmic density (rho(1/d) - rho(1/c))(rho(1/b) - rho(1/a)).
    '''

    table = table or default_table()
    a, b, c, d = (cfg.param(name) for name in 'abcd')
    if not (0 < a < b < 1 and 0 < c < d < 1):
        raise DomainError("need 0 < a < b < 1 and 0 < c < d < 1, got ({}, {}, {}, {})".format(
                                                                        a, b, c, d))

    target = rect_density(table, a, b, c, d)
    weighting = _weighting(cfg, 'natural')
    sums = _scan(cfg, density.factor_rectangle, 2, (a, b, c, d))
    cells = _cells(sums, weighting, ('outside', 'inside'))
    return _estimate(cfg, 'hildebrand_rect', sums, (1,), weighting, target, 2*table.tol,
                                                                        classes=cells)


def exp_ordering(cfg, table=None):
    '''Densities of the k! orderings of P+(n + offset), ..., P+(n + offset + k - 1)
    (offset defaults to 1), each against 1/k!. Returns a list of
    (shifts, estimate) with the shifts in order of increasing P+, followed by
    ('ties', estimate) for n at which two of the largest prime factors agree.
    '''

    k = cfg.param('k')
    offset = cfg.param('offset', 1)
    if k > MAX_ORDERING:
        raise CapacityError("ordering of {} shifts needs {}! classes; at most {} shifts are supported".format(
                                                                k, k, MAX_ORDERING))
    if k < 2:
        raise DomainError("ordering needs k >= 2, got {}".format(k))
    if offset < 0:
        raise DomainError("offset must be >= 0, got {}".format(offset))

    orderings = Orderings(k, offset)
    weighting = _weighting(cfg, 'logarithmic')
    sums = _scan(cfg, density.largest_factor_ordering, orderings.nclasses, (k, offset),
                                                                pad=offset + k - 1)

    target = 1./math.factorial(k)
    results = []
    for label, perm in enumerate(orderings.permutations):
        results.append((orderings.shifts(perm),
                        _estimate(cfg, orderings.name(perm), sums, (label,), weighting,
                                                                    target, 0.)))

    results.append(('ties', _estimate(cfg, 'ties', sums, (orderings.nclasses - 1,),
                                                                        weighting)))
    return results


def exp_truncated_liouville(cfg, table=None):
    '''(1/log x) sum_{n <= x} lambda_{>y}(n)lambda_{>y}(n + 1)/n with y = x^eps,
    or the windowed correlation over [x/omega, x] when the window is "tail".
    '''

    eps = cfg.param('eps')
    _unit_interval('eps', eps)

    spec = truncated_liouville_gt(y_power=eps)
    if cfg.window == 'tail':
        req = CorrelationRequest(spec, spec, 1, cfg.x, cfg.omega)
        return log_correlation(req, **cfg.scan_options)
    return full_log_correlation(spec, spec, 1, cfg.x, **cfg.scan_options)


EXPERIMENTS = {'omega_joint': exp_omega_joint,
               'erdos_pomerance': exp_erdos_pomerance,
               'erdos_turan': exp_erdos_turan,
               'alpha_shift': exp_alpha_shift,
               'hildebrand_rect': exp_hildebrand_rect,
               'ordering': exp_ordering,
               'truncated_liouville': exp_truncated_liouville}


def get_experiment(name):
    try:
        return EXPERIMENTS[name]
    except KeyError:
        close = difflib.get_close_matches(name, EXPERIMENTS, n=1)
        hint = " (did you mean {}?)".format(close[0]) if close else ""
        raise UsageError("{} is not a known experiment{}".format(name, hint))


def run_experiment(name, cfg, table=None):
    '''Runs the experiment <name>. The result of truncated_liouville is
    wrapped in a <ShiftCorrelation>.
    '''

    result = get_experiment(name)(cfg, table)
    if name == 'truncated_liouville':
        eps = cfg.param('eps')
        return ShiftCorrelation(label=name, x=int(cfg.x), window=cfg.window, epsilon=eps,
                                y=float(cfg.x)**eps, value=result)
    return result


def primary(result):
    '''The estimate a sweep reports: the joint estimate of omega_joint and the
    first ordering of <exp_ordering>.
    '''

    if isinstance(result, tuple):
        return result[0]
    if isinstance(result, list):
        return result[0][1]
    return result


def sweep(name, cfg, param, values, table=None):
    '''Runs <name> once for each value of <param> (an experiment parameter or
    x). Returns rows (value, estimate, target, abs_error).
    '''

    table = table or default_table()
    rows = []
    for value in values:
        result = primary(run_experiment(name, cfg.with_parameter(param, value), table))
        if isinstance(result, ShiftCorrelation):
            rows.append((value, result.value, None, None))
        else:
            rows.append((value, result.estimate, result.target, result.abs_error))
        logger.info("%s = %s: %s", param, value, rows[-1][1])
    return rows


def chained_estimate(name, cfg, y_stop=MIN_X, table=None):
    '''Logarithmic estimate of experiment <name> assembled from its tail
    windows [y_j/log y_j, y_j], y_1 = x, y_{j+1} = y_j/log y_j, each weighted
    by log log y_j. Adjacent windows share no integer.
    '''

    if name == 'truncated_liouville':
        raise UsageError("chained estimates need a density experiment, not {}".format(name))

    table = table or default_table()
    chain = chain_windows(cfg.x, y_stop)

    total, weight, first = 0., 0., None
    for y, w, lo, hi in chain:
        sub = dataclasses.replace(cfg, x=y, window='tail', omega='logx',
                                  weighting='logarithmic', bounds=(lo, hi))
        est = primary(run_experiment(name, sub, table))
        if first is None:
            first = est
        total += w*est.estimate
        weight += w

    return DensityEstimate(label=first.label, x=int(cfg.x), weighting='logarithmic',
                           window='chained', estimate=total/weight, target=first.target,
                           target_error=first.target_error, weight=weight)
