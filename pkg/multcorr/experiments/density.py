#!/usr/bin/env python
'''Density estimates for sets of integers defined by the prime factorizations
of n, n + 1, ..., n + k.

A classifier assigns every n in a segment to one of a fixed number of classes
(eg. P+(n) < P+(n + 1), P+(n) > P+(n + 1), P+(n) = P+(n + 1)). A scan over the
segments of a window accumulates, for each class, the harmonic sum
sum 1/n and the plain count of its members. The logarithmic density of a class
is its harmonic sum divided by the harmonic weight of the window and the
natural density is its count divided by the number of integers in the window,
so the estimates for the classes of a classifier always add up to 1.

Classifiers must be module level functions with signature
classifier(seg, lo, hi, *params) returning an integer label for each
lo <= n < hi; <seg> covers [lo, hi + pad) where pad is the largest shift the
classifier looks at.
'''
from __future__ import absolute_import

import dataclasses
import itertools
import logging
import math

import numpy as np

from multcorr.sieve.factor_sieve import exceeds_power, exceeds_scaled_power, omega_above
from multcorr.sieve.segments import check_omega, exact_sum, merge_partials, \
                                                    scan_segments, window_bounds
from multcorr.utilities.control_functions import resolve_omega
from multcorr.utilities.errors import DomainError

logger = logging.getLogger(__name__)

WEIGHTINGS = ('logarithmic', 'natural')
WINDOWS = ('full', 'tail')

# full windows start at n = 2; P+(1) = 1 would put n = 1 in the smooth classes
FULL_START = 2


@dataclasses.dataclass
class DensityEstimate:
    '''Estimated density of one class, with the analytic target it is compared
    against. <weight> is the harmonic weight (logarithmic) or the number of
    integers (natural) of the window, so that estimates for adjacent windows
    can be combined. <classes> holds the estimates of related classes.
    '''

    label: str
    x: int
    weighting: str
    window: str
    estimate: float
    target: float = None
    abs_error: float = None
    target_error: float = None
    weight: float = None
    classes: dict = None

    def __post_init__(self):
        if self.target is not None and self.abs_error is None:
            self.abs_error = abs(self.estimate - self.target)


@dataclasses.dataclass
class ClassSums:
    '''Per-class harmonic sums and counts over the window [lo, hi).
    '''

    lo: int
    hi: int
    harmonic: np.ndarray
    counts: np.ndarray

    @property
    def log_weight(self):
        return exact_sum(self.harmonic)

    @property
    def size(self):
        return int(self.counts.sum())

    def weight(self, weighting):
        return self.log_weight if weighting == 'logarithmic' else float(self.size)

    def densities(self, weighting):
        '''Estimates for every class; they add up to 1 up to rounding.
        '''

        if weighting == 'logarithmic':
            return self.harmonic/self.log_weight
        return self.counts/float(self.size)

    def density(self, weighting, labels):
        '''Estimate for the union of the classes in <labels>.
        '''

        if weighting == 'logarithmic':
            return exact_sum(self.harmonic[list(labels)])/self.log_weight
        return float(self.counts[list(labels)].sum())/self.size


def _at(values, seg, lo, hi, shift=0):
    '''Entries of the per-offset array <values> for the integers n + shift,
    lo <= n < hi.
    '''

    return values[lo + shift - seg.lo:hi + shift - seg.lo]


def _classify_kernel(seg, lo, hi, classifier, nclasses, params):
    labels = classifier(seg, lo, hi, *params)
    inv = 1./np.arange(lo, hi, dtype=np.float64)

    harmonic = [exact_sum(inv[labels == c]) for c in range(nclasses)]
    counts = np.bincount(labels, minlength=nclasses)[:nclasses].astype(np.float64)
    return tuple(harmonic) + tuple(counts)


def scan_window(x, window='full', omega=None):
    '''Integer bounds [lo, hi) of the full window [2, x] or the tail window
    [x/omega, x].
    '''

    if window not in WINDOWS:
        raise DomainError("{} is not a valid window (full or tail)".format(window))

    if window == 'full':
        return FULL_START, int(math.floor(x)) + 1

    omega = resolve_omega(omega if omega is not None else 'logx', x)
    check_omega(x, omega)
    lo, hi = window_bounds(x, omega)
    return max(lo, FULL_START), hi


def classify(classifier, nclasses, lo, hi, params=(), pad=1, segment_size=2**20,
                                                                nprocesses=None):
    '''Scans [lo, hi) with <classifier> and returns the per-class sums.
    '''

    if hi <= lo:
        raise DomainError("empty window [{}, {})".format(lo, hi))

    parts = scan_segments(_classify_kernel, lo, hi, args=(classifier, nclasses, tuple(params)),
                          pad_right=pad, segment_size=segment_size, nprocesses=nprocesses)
    merged = np.array(merge_partials(parts))
    return ClassSums(lo, hi, merged[:nclasses], merged[nclasses:])


# classifiers

def largest_factor_order(seg, lo, hi):
    '''0 if P+(n) < P+(n + 1), 1 if P+(n) > P+(n + 1), 2 on ties.
    '''

    p0 = _at(seg.lpf, seg, lo, hi)
    p1 = _at(seg.lpf, seg, lo, hi, 1)
    return np.where(p0 < p1, 0, np.where(p0 > p1, 1, 2))


def joint_smoothness(seg, lo, hi, a, b):
    '''2*[P+(n) <= n^a] + [P+(n + 1) <= n^b].
    '''

    n = np.arange(lo, hi, dtype=np.int64)
    first = ~exceeds_power(_at(seg.lpf, seg, lo, hi), n, a)
    second = ~exceeds_power(_at(seg.lpf, seg, lo, hi, 1), n, b)
    return 2*first.astype(np.int64) + second


def joint_large_factor_count(seg, lo, hi, a, b, k, l):
    '''2*[omega_{>n^a}(n) = k] + [omega_{>n^b}(n + 1) = l].
    '''

    first = _at(omega_above(seg, a), seg, lo, hi) == k
    second = _at(omega_above(seg, b, base_offset=1), seg, lo, hi, 1) == l
    return 2*first.astype(np.int64) + second


def shifted_dominance(seg, lo, hi, alpha):
    '''1 if P+(n + 1) > P+(n)*n^alpha, else 0.
    '''

    n = np.arange(lo, hi, dtype=np.int64)
    return exceeds_scaled_power(_at(seg.lpf, seg, lo, hi, 1), _at(seg.lpf, seg, lo, hi),
                                                            n, alpha).astype(np.int64)


def factor_rectangle(seg, lo, hi, a, b, c, d):
    '''1 if n^a < P+(n) <= n^b and n^c < P+(n + 1) <= n^d, else 0.
    '''

    n = np.arange(lo, hi, dtype=np.int64)
    p0 = _at(seg.lpf, seg, lo, hi)
    p1 = _at(seg.lpf, seg, lo, hi, 1)
    inside = (exceeds_power(p0, n, a) & ~exceeds_power(p0, n, b) &
              exceeds_power(p1, n, c) & ~exceeds_power(p1, n, d))
    return inside.astype(np.int64)


@dataclasses.dataclass(frozen=True)
class Orderings:
    '''The k! strict orderings of P+(n + offset), ..., P+(n + offset + k - 1).
    Each ordering lists the shifts by increasing largest prime factor; label k!
    is the class of ties.
    '''

    k: int
    offset: int = 1

    @property
    def permutations(self):
        return list(itertools.permutations(range(self.k)))

    @property
    def nclasses(self):
        return math.factorial(self.k) + 1

    def shifts(self, perm):
        return tuple(self.offset + i for i in perm)

    def name(self, perm):
        return '<'.join('P+(n+{})'.format(s) for s in self.shifts(perm))

    def lookup(self):
        '''Map from the base-k code of an argsort to the ordering's label.
        '''

        table = np.zeros(self.k**self.k, dtype=np.int64)
        for label, perm in enumerate(self.permutations):
            table[sum(p*self.k**i for i, p in enumerate(perm))] = label
        return table


def largest_factor_ordering(seg, lo, hi, k, offset):
    values = np.stack([_at(seg.lpf, seg, lo, hi, offset + i) for i in range(k)])
    order = np.argsort(values, axis=0, kind='stable')

    code = np.zeros(hi - lo, dtype=np.int64)
    for i in range(k):
        code += order[i]*k**i
    labels = Orderings(k, offset).lookup()[code]

    tied = np.zeros(hi - lo, dtype=bool)
    for i, j in itertools.combinations(range(k), 2):
        tied |= values[i] == values[j]
    labels[tied] = math.factorial(k)
    return labels
