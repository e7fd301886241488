#!/usr/bin/env python
'''Logarithmically averaged binary correlations

    f(h) = (1/log omega) sum_{x/omega <= n <= x} g1(n)g2(n + h)/n

of two multiplicative functions, the centred version in which g_j is replaced
by g_j - delta_j (delta_j the mean of g_j over [x, 2x]) and the comparison of
f(h) with delta_1*delta_2.

A single pass over the window accumulates five harmonic sums,

    S12 = sum g1(n)g2(n+h)/n    S1 = sum g1(n)/n    S2 = sum g2(n+h)/n
    S0  = sum 1/n               Sc = sum (g1(n)-d1)(g2(n+h)-d2)/n

so that the centred sum can be checked against its algebraic expansion
Sc = S12 - d2*S1 - d1*S2 + d1*d2*S0.
'''
from __future__ import absolute_import

import dataclasses
import logging
import math

import numpy as np

from multcorr.arith.multfunc import MultFuncSpec, evaluate, mean_value, parse_spec
from multcorr.sieve.segments import check_omega, exact_sum, merge_partials, \
                                                    scan_segments, window_bounds
from multcorr.utilities.control_functions import parse_omega, resolve_omega
from multcorr.utilities.errors import DomainError

logger = logging.getLogger(__name__)

MIN_X = 100


@dataclasses.dataclass(frozen=True)
class CorrelationRequest:
    '''<omega> may be a number or a window expression (logx, log3x, const:c);
    it is evaluated at <x>. Thresholds of g1, g2 given relative to x are
    resolved at <x>.
    '''

    g1: MultFuncSpec
    g2: MultFuncSpec
    h: int
    x: float
    omega: object = 'logx'

    def __post_init__(self):
        if self.h == 0:
            raise DomainError("shift h must be nonzero")
        if self.x < MIN_X:
            raise DomainError("x must be >= {}, got {}".format(MIN_X, self.x))
        check_omega(self.x, self.omega_value)

    @property
    def omega_value(self):
        return resolve_omega(self.omega, self.x)

    def resolved(self):
        return self.g1.resolve(self.x), self.g2.resolve(self.x)


def _correlation_kernel(seg, lo, hi, g1, g2, h, d1, d2):
    # skip n with n + h < 1
    lo = max(lo, 1 - h)
    if hi <= lo:
        return (0., 0., 0., 0., 0., 0.)

    inv = 1./np.arange(lo, hi, dtype=np.float64)
    a = evaluate(g1, seg, lo, hi)
    b = evaluate(g2, seg, lo + h, hi + h)

    return (exact_sum(a*b*inv), exact_sum(a*inv), exact_sum(b*inv), exact_sum(inv),
            exact_sum((a - d1)*(b - d2)*inv), float(hi - lo))


def correlation_sums(req, d1=0., d2=0., segment_size=2**20, nprocesses=None):
    '''(S12, S1, S2, S0, Sc, n_terms) over the window of <req>.
    '''

    g1, g2 = req.resolved()
    lo, hi = window_bounds(req.x, req.omega_value)
    h = int(req.h)
    parts = scan_segments(_correlation_kernel, lo, hi, args=(g1, g2, h, d1, d2),
                          pad_left=max(-h, 0), pad_right=max(h, 0),
                          segment_size=segment_size, nprocesses=nprocesses)
    return merge_partials(parts)


def log_correlation(req, **kwargs):
    '''f(h) over the window [x/omega, x].
    '''

    sums = correlation_sums(req, **kwargs)
    return sums[0]/math.log(req.omega_value)


def full_log_correlation(g1, g2, h, x, segment_size=2**20, nprocesses=None):
    '''(1/log x) sum_{1 <= n <= x} g1(n)g2(n + h)/n, the correlation over the
    whole range rather than a window.
    '''

    if h == 0:
        raise DomainError("shift h must be nonzero")
    if x < MIN_X:
        raise DomainError("x must be >= {}, got {}".format(MIN_X, x))

    g1, g2 = g1.resolve(x), g2.resolve(x)
    h = int(h)
    parts = scan_segments(_correlation_kernel, 1, int(math.floor(x)) + 1,
                          args=(g1, g2, h, 0., 0.), pad_left=max(-h, 0),
                          pad_right=max(h, 0), segment_size=segment_size,
                          nprocesses=nprocesses)
    return merge_partials(parts)[0]/math.log(x)


def mean_values(req, segment_size=2**20, nprocesses=None):
    '''(delta_1, delta_2): means of g1 and g2 over [x, 2x].
    '''

    g1, g2 = req.resolved()
    d1 = mean_value(g1, req.x, segment_size, nprocesses)
    d2 = d1 if g2 == g1 else mean_value(g2, req.x, segment_size, nprocesses)
    return d1, d2


def normalized_correlation(req, **kwargs):
    '''(1/log omega) sum (g1(n) - delta_1)(g2(n + h) - delta_2)/n.
    '''

    d1, d2 = mean_values(req, **kwargs)
    sums = correlation_sums(req, d1, d2, **kwargs)
    return sums[4]/math.log(req.omega_value)


@dataclasses.dataclass
class CorrelationReport:
    g1: str
    g2: str
    h: int
    x: float
    omega: float
    lhs: float
    delta1: float
    delta2: float
    rhs: float
    discrepancy: float
    n_terms: int
    normalized: float
    log_mean_g1: float
    log_mean_g2: float
    log_weight: float

    def expansion_residual(self):
        '''Difference between the centred correlation and its expansion in
        terms of the uncentred pieces.
        '''

        d1, d2 = self.delta1, self.delta2
        expanded = (self.lhs - d2*self.log_mean_g1 - d1*self.log_mean_g2 +
                                                        d1*d2*self.log_weight)
        return self.normalized - expanded


def theorem13_check(req, **kwargs):
    '''Compares f(h) with the product of the mean values of g1 and g2; the
    discrepancy |f(h) - delta_1*delta_2| is the empirical error term.
    '''

    d1, d2 = mean_values(req, **kwargs)
    s12, s1, s2, s0, sc, n_terms = correlation_sums(req, d1, d2, **kwargs)
    norm = math.log(req.omega_value)

    g1, g2 = req.resolved()
    lhs = s12/norm
    report = CorrelationReport(g1=str(g1), g2=str(g2), h=int(req.h), x=req.x,
                               omega=req.omega_value, lhs=lhs, delta1=d1, delta2=d2,
                               rhs=d1*d2, discrepancy=abs(lhs - d1*d2),
                               n_terms=int(n_terms), normalized=sc/norm,
                               log_mean_g1=s1/norm, log_mean_g2=s2/norm,
                               log_weight=s0/norm)

    logger.info("x = %g: lhs = %.6g, rhs = %.6g, discrepancy = %.3g", req.x, lhs,
                                                    d1*d2, report.discrepancy)
    return report


def discrepancy_trend(g1, g2, h, omega, x_list, **kwargs):
    '''[(x, discrepancy), ...] for each x in the ascending list <x_list>, the
    window expression <omega> being evaluated afresh at every x.
    '''

    x_list = list(x_list)
    if any(b <= a for a, b in zip(x_list, x_list[1:])):
        raise DomainError("x values must be strictly ascending")

    g1, g2 = parse_spec(g1), parse_spec(g2)
    if not isinstance(omega, (int, float)):
        omega = parse_omega(omega)

    trend = []
    for x in x_list:
        report = theorem13_check(CorrelationRequest(g1, g2, h, x, omega), **kwargs)
        trend.append((x, report.discrepancy))
    return trend


def chain_windows(x, y_stop):
    '''Scales y_1 = x, y_{j+1} = y_j/log(y_j), stopping before y drops below
    <y_stop>. Returns (y_j, w_j, lo_j, hi_j) per window, w_j = log log y_j.
    The integer windows [lo_j, hi_j) cover [y_j/log y_j, y_j] and are
    disjoint, hi_{j+1} = lo_j, so the weighted window averages add up to the
    harmonic sum over [lo_J, x] even when some y_j/log y_j is an integer.
    '''

    if y_stop < MIN_X:
        raise DomainError("chain must stop at or above {}".format(MIN_X))

    chain = []
    y = float(x)
    hi = int(math.floor(y)) + 1
    while y >= y_stop:
        lo = window_bounds(y, math.log(y))[0]
        chain.append((y, math.log(math.log(y)), lo, hi))
        hi = lo
        y = y/math.log(y)

    return chain
