#!/usr/bin/env python
'''Equidistribution of a multiplicative function in residue classes.

A function g is uniform at scale x up to modulus Q with parameter eta when, for
every 1 <= a <= q <= Q,

    |(1/x) sum_{x <= n <= 2x, n = a mod q} g(n) - (1/q)(1/x) sum_{x <= n <= 2x} g(n)| <= eta/q.

<uniformity_deficiency> returns the smallest such eta. The strong form replaces
the full mean by a fixed delta and asks for the same bound on [y, 2y] for every
y in [x/omega, x]; it is probed at geometrically spaced y.
'''
from __future__ import absolute_import

import dataclasses
import logging
import math

import numpy as np

from multcorr.arith.multfunc import evaluate, mean_value
from multcorr.sieve.segments import check_omega, merge_partials, scan_segments
from multcorr.utilities.control_functions import resolve_omega
from multcorr.utilities.errors import DomainError

logger = logging.getLogger(__name__)

DEFAULT_PROBES = 8


def _progression_kernel(seg, lo, hi, spec, moduli):
    '''For each q in <moduli>, the sums of g(n) over lo <= n < hi in each
    residue class mod q, concatenated.
    '''

    g = evaluate(spec, seg, lo, hi)
    n = np.arange(lo, hi, dtype=np.int64)
    return np.concatenate([np.bincount(n % q, weights=g, minlength=q) for q in moduli])


def progression_sums(spec, lo, hi, moduli, segment_size=2**20, nprocesses=None):
    '''Dictionary q -> array of sum_{lo <= n < hi, n = r mod q} g(n), r = 0..q-1.
    '''

    parts = scan_segments(_progression_kernel, lo, hi, args=(spec, tuple(moduli)),
                          segment_size=segment_size, nprocesses=nprocesses)
    flat = np.array(merge_partials(parts))

    sums = dict()
    start = 0
    for q in moduli:
        sums[q] = flat[start:start + q]
        start += q
    return sums


def _window(X):
    '''Integer bounds [lo, hi) of X <= n <= 2X.
    '''

    return int(math.ceil(X - 1e-9)), int(math.floor(2*X + 1e-9)) + 1


def _worst(sums, X, delta):
    '''max over q, 1 <= a <= q of q*|S(a, q)/X - delta/q|, with the maximising
    (a, q).
    '''

    eta, worst_a, worst_q = 0., 1, 1
    for q, by_residue in sums.items():
        dev = q*np.abs(by_residue/X - delta/q)
        r = int(np.argmax(dev))
        if dev[r] > eta:
            eta = float(dev[r])
            worst_a, worst_q = (r if r != 0 else q), q
    return eta, worst_a, worst_q


@dataclasses.dataclass
class UniformityReport:
    spec: str
    x: int
    Q: int
    eta_star: float
    worst_a: int
    worst_q: int


def uniformity_deficiency(spec, x, Q, segment_size=2**20, nprocesses=None):
    '''Smallest eta with g uniform at scale x up to modulus Q.
    '''

    if not (1 <= Q <= x):
        raise DomainError("modulus bound must satisfy 1 <= Q <= x, got Q = {}".format(Q))

    spec = spec.resolve(x)
    lo, hi = _window(x)
    sums = progression_sums(spec, lo, hi, range(1, Q + 1), segment_size, nprocesses)

    # the q = 1 class holds the full sum
    full = sums[1][0]/x
    eta, a, q = _worst(sums, x, full)

    logger.info("eta* = %g at a = %d, q = %d", eta, a, q)
    return UniformityReport(spec=str(spec), x=int(x), Q=int(Q), eta_star=eta,
                            worst_a=a, worst_q=q)


@dataclasses.dataclass
class StrongUniformityReport:
    spec: str
    x: int
    Q: int
    omega: float
    delta: float
    eta_star: float
    probe_points: list
    worst_a: int
    worst_q: int
    worst_y: int


def probe_points(x, omega, probes=DEFAULT_PROBES):
    '''<probes> integers spaced geometrically from x/omega to x.
    '''

    if probes < 2:
        raise DomainError("need at least two probes, got {}".format(probes))

    ys = (x/omega)*omega**(np.arange(probes)/(probes - 1.))
    return sorted(set(int(round(y)) for y in ys))


def strong_uniformity_deficiency(spec, x, Q, omega='logx', probes=DEFAULT_PROBES,
                                 segment_size=2**20, nprocesses=None):
    '''Largest deviation q*|(1/y) sum_{y <= n <= 2y, n = a mod q} g(n) - delta/q|
    over the probe points y in [x/omega, x] and all 1 <= a <= q <= Q, where
    delta is the mean value of g over [x, 2x]. Probing is an under-estimate of
    the supremum over all y.
    '''

    omega = resolve_omega(omega, x)
    check_omega(x, omega)
    if not (1 <= Q <= x/omega):
        raise DomainError("modulus bound must satisfy 1 <= Q <= x/omega, got Q = {}".format(Q))

    spec = spec.resolve(x)
    delta = mean_value(spec, x, segment_size, nprocesses)

    ys = probe_points(x, omega, probes)
    eta, worst = 0., (1, 1, ys[0])
    for y in ys:
        lo, hi = _window(y)
        sums = progression_sums(spec, lo, hi, range(1, Q + 1), segment_size, nprocesses)
        e, a, q = _worst(sums, y, delta)
        logger.debug("probe y = %d: eta = %g", y, e)
        if e > eta:
            eta, worst = e, (a, q, y)

    return StrongUniformityReport(spec=str(spec), x=int(x), Q=int(Q), omega=omega,
                                  delta=delta, eta_star=eta, probe_points=ys,
                                  worst_a=worst[0], worst_q=worst[1], worst_y=worst[2])


def stability_gap(spec, x, y_shrink, a, q, segment_size=2**20, nprocesses=None):
    '''|m(x) - m(x/y_shrink)| where m(X) = (1/X) sum_{X <= n <= 2X, n = a mod q} g(n).
    Thresholds relative to x are resolved at <x> for both windows.
    '''

    if not (1 <= y_shrink <= max(math.log(x), 1.)**10):
        raise DomainError("shrink factor must lie in [1, log(x)^10], got {}".format(y_shrink))
    if q < 1 or x/y_shrink < q:
        raise DomainError("need 1 <= q <= x/y, got q = {}".format(q))

    spec = spec.resolve(x)
    means = []
    for X in (x, x/y_shrink):
        lo, hi = _window(X)
        sums = progression_sums(spec, lo, hi, (q,), segment_size, nprocesses)
        means.append(sums[q][a % q]/X)

    return abs(means[0] - means[1])
