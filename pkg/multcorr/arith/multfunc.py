#!/usr/bin/env python
'''Bounded real multiplicative functions g: N -> [-1, 1], evaluated from the
factorizations produced by <factor_sieve>, and the averages built from them:
mean values over [x, 2x], logarithmic means over [x/omega, x] and the
pretentious distance between two functions.

Functions are described by an immutable <MultFuncSpec>. The command line
grammar is

    constant_one | liouville | moebius
    tliouville_gt:y=<y>   tliouville_lt:y=<y>   smooth:y=<y>
    power:y=<y>,z=<z>     char:Q=<Q>

where a threshold y may be given relative to x as "x^a" (eg. smooth:y=x^0.5)
and is then fixed by <MultFuncSpec.resolve>.
'''
from __future__ import absolute_import

import dataclasses
import logging
import math
import re

import numpy as np

from multcorr.arith import charsum
from multcorr.sieve.factor_sieve import check_factors, primes_up_to
from multcorr.sieve.segments import check_omega, exact_sum, merge_partials, \
                                                    scan_segments, window_bounds
from multcorr.utilities.control_functions import resolve_omega, to_int
from multcorr.utilities.errors import DomainError, SpecParseError

logger = logging.getLogger(__name__)

KINDS = ('constant_one', 'liouville', 'moebius', 'tliouville_gt', 'tliouville_lt',
         'smooth', 'power', 'char')

# accepted spellings in specification strings
_ALIASES = {'one': 'constant_one', 'constant_one': 'constant_one', '1': 'constant_one',
            'liouville': 'liouville', 'lambda': 'liouville',
            'moebius': 'moebius', 'mobius': 'moebius', 'mu': 'moebius',
            'tliouville_gt': 'tliouville_gt', 'tliouville_lt': 'tliouville_lt',
            'smooth': 'smooth', 'power': 'power', 'char': 'char'}

_PARAMETERS = {'constant_one': (), 'liouville': (), 'moebius': (),
               'tliouville_gt': ('y',), 'tliouville_lt': ('y',), 'smooth': ('y',),
               'power': ('y', 'z'), 'char': ('Q',)}

_relative = re.compile(r'^x\s*\^\s*(?P<a>[-+]?[\d.]+(e[-+]?\d+)?)$', re.IGNORECASE)


@dataclasses.dataclass(frozen=True)
class MultFuncSpec:
    '''A named multiplicative function. <y> is a threshold (primes p > y or
    p < y are treated specially), <y_power> a threshold relative to x that
    <resolve> turns into <y>, <z> the weight of power_weight and <Q> the
    modulus of a real character.
    '''

    kind: str
    y: float = None
    z: float = None
    Q: int = None
    y_power: float = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError("{} is not a known multiplicative function".format(self.kind))

        needs = _PARAMETERS[self.kind]
        if 'y' in needs:
            if self.y is None and self.y_power is None:
                raise DomainError("{} needs a threshold y".format(self.kind))
            if self.y is not None and not (self.y > 0 and math.isfinite(self.y)):
                raise DomainError("threshold must be finite and positive, got {}".format(self.y))
            if self.y_power is not None and not (0 <= self.y_power <= 1):
                raise DomainError("relative threshold x^a needs 0 <= a <= 1, got {}".format(
                                                                        self.y_power))
        if 'z' in needs:
            if self.z is None or not (-1 <= self.z <= 1):
                raise DomainError("{} needs a weight z in [-1, 1], got {}".format(self.kind,
                                                                            self.z))
        if 'Q' in needs:
            if self.Q is None:
                raise DomainError("char needs a modulus Q")
            # raises for even or non-squarefree moduli
            charsum.factor_modulus(self.Q)

    def resolve(self, x):
        '''Fixes a threshold given relative to x.
        '''

        if self.y_power is None:
            return self
        return dataclasses.replace(self, y=float(x)**self.y_power, y_power=None)

    @property
    def is_resolved(self):
        return self.y_power is None

    def __str__(self):
        params = []
        for name in _PARAMETERS[self.kind]:
            if name == 'y' and self.y_power is not None:
                params.append('y=x^{:g}'.format(self.y_power))
            elif name == 'Q':
                params.append('Q={}'.format(self.Q))
            else:
                params.append('{}={:g}'.format(name, getattr(self, name)))
        if params:
            return '{}:{}'.format(self.kind, ','.join(params))
        return self.kind


def constant_one():
    return MultFuncSpec('constant_one')


def liouville():
    return MultFuncSpec('liouville')


def moebius():
    return MultFuncSpec('moebius')


def truncated_liouville_gt(y=None, y_power=None):
    return MultFuncSpec('tliouville_gt', y=y, y_power=y_power)


def truncated_liouville_lt(y=None, y_power=None):
    return MultFuncSpec('tliouville_lt', y=y, y_power=y_power)


def smooth_indicator(y=None, y_power=None):
    return MultFuncSpec('smooth', y=y, y_power=y_power)


def power_weight(z, y=None, y_power=None):
    return MultFuncSpec('power', y=y, z=z, y_power=y_power)


def real_character(Q):
    return MultFuncSpec('char', Q=int(Q))


def parse_spec(in_str):
    '''Reads a specification string such as "power:y=1e4,z=0.5". Errors name
    the offending token.
    '''

    if isinstance(in_str, MultFuncSpec):
        return in_str

    text = in_str.strip()
    if not text:
        raise SpecParseError("empty function specification", in_str)

    name, _, rest = text.partition(':')
    name = name.strip()
    kind = _ALIASES.get(name.lower())
    if kind is None:
        raise SpecParseError("unknown function", name)

    allowed = _PARAMETERS[kind]
    values = dict()
    if rest.strip():
        for token in rest.split(','):
            token = token.strip()
            if '=' not in token:
                raise SpecParseError("expected name=value", token)
            key, value = (t.strip() for t in token.split('=', 1))
            if key not in allowed:
                raise SpecParseError("{} takes no parameter {}".format(kind, key), token)
            if key in values:
                raise SpecParseError("parameter given twice", token)

            if key == 'y':
                found = _relative.match(value)
                if found:
                    values['y_power'] = float(found.group('a'))
                    values['y'] = None
                    continue
            try:
                values[key] = to_int(value) if key == 'Q' else float(value)
            except ValueError:
                raise SpecParseError("not a valid {} value".format(key), token)

    for key in allowed:
        if key not in values:
            raise SpecParseError("{} needs parameter {}".format(kind, key), text)

    try:
        return MultFuncSpec(kind, **values)
    except DomainError as e:
        raise SpecParseError(str(e), text)


def _require_resolved(spec):
    if not spec.is_resolved:
        raise DomainError("threshold of {} is relative to x; call resolve(x) first".format(
                                                                            spec))


def eval_spec(spec, n, factors):
    '''g(n) from the factor list [(p, e), ...] of <n>.
    '''

    _require_resolved(spec)
    check_factors(n, factors)

    kind = spec.kind
    if kind == 'constant_one':
        return 1.
    elif kind == 'liouville':
        return float((-1)**sum(e for p, e in factors))
    elif kind == 'moebius':
        if any(e > 1 for p, e in factors):
            return 0.
        return float((-1)**len(factors))
    elif kind == 'tliouville_gt':
        return float((-1)**sum(e for p, e in factors if p > spec.y))
    elif kind == 'tliouville_lt':
        return float((-1)**sum(e for p, e in factors if p < spec.y))
    elif kind == 'smooth':
        largest = factors[-1][0] if factors else 1
        return 1. if largest <= spec.y else 0.
    elif kind == 'power':
        return float(spec.z)**sum(1 for p, e in factors if p > spec.y)
    elif kind == 'char':
        return float(charsum.jacobi(n, spec.Q))


def _sign(count):
    return 1. - 2.*(count % 2)


def evaluate(spec, seg, lo=None, hi=None):
    '''Vectorised g(n) for lo <= n < hi, taken from the factored segment
    <seg> (default: the whole segment).
    '''

    _require_resolved(spec)
    if lo is None:
        lo = seg.lo
    if hi is None:
        hi = seg.hi
    i0, i1 = lo - seg.lo, hi - seg.lo
    size = len(seg)

    kind = spec.kind
    if kind == 'constant_one':
        return np.ones(i1 - i0)
    elif kind == 'liouville':
        values = _sign(seg.big_omega())
    elif kind == 'moebius':
        square = np.bincount(seg.owner, weights=(seg.exps > 1).astype(np.float64),
                             minlength=size) > 0
        values = np.where(square, 0., _sign(seg.counts))
    elif kind in ('tliouville_gt', 'tliouville_lt'):
        marked = seg.primes > spec.y if kind == 'tliouville_gt' else seg.primes < spec.y
        count = np.bincount(seg.owner, weights=seg.exps*marked, minlength=size)
        values = _sign(count.astype(np.int64))
    elif kind == 'smooth':
        values = (seg.lpf <= spec.y).astype(np.float64)
    elif kind == 'power':
        values = float(spec.z)**seg.count_above(spec.y).astype(np.float64)
    elif kind == 'char':
        return charsum.jacobi_array(np.arange(lo, hi, dtype=np.int64),
                                    spec.Q).astype(np.float64)

    return values[i0:i1]


def prime_values(spec, primes):
    '''g(p) for an array of primes.
    '''

    _require_resolved(spec)
    primes = np.asarray(primes, dtype=np.int64)

    kind = spec.kind
    if kind == 'constant_one':
        return np.ones(len(primes))
    elif kind in ('liouville', 'moebius'):
        return -np.ones(len(primes))
    elif kind == 'tliouville_gt':
        return np.where(primes > spec.y, -1., 1.)
    elif kind == 'tliouville_lt':
        return np.where(primes < spec.y, -1., 1.)
    elif kind == 'smooth':
        return np.where(primes <= spec.y, 1., 0.)
    elif kind == 'power':
        return np.where(primes > spec.y, float(spec.z), 1.)
    elif kind == 'char':
        return charsum.jacobi_array(primes, spec.Q).astype(np.float64)


def _sum_kernel(seg, lo, hi, spec, harmonic):
    g = evaluate(spec, seg, lo, hi)
    if harmonic:
        g = g/np.arange(lo, hi, dtype=np.float64)
    return (exact_sum(g),)


def window_sum(spec, lo, hi, harmonic=False, segment_size=2**20, nprocesses=None):
    '''sum_{lo <= n < hi} g(n) (or g(n)/n if <harmonic>), merged in segment
    order.
    '''

    parts = scan_segments(_sum_kernel, lo, hi, args=(spec, harmonic),
                          segment_size=segment_size, nprocesses=nprocesses)
    return merge_partials(parts)[0]


def mean_value(spec, x, segment_size=2**20, nprocesses=None):
    '''(1/x) sum_{x <= n <= 2x} g(n). Thresholds relative to x are resolved
    at <x>.
    '''

    if x < 1:
        raise DomainError("x must be >= 1, got {}".format(x))

    spec = spec.resolve(x)
    lo, hi = int(math.ceil(x)), int(math.floor(2*x)) + 1
    return window_sum(spec, lo, hi, segment_size=segment_size,
                                            nprocesses=nprocesses)/x


def log_mean_value(spec, x, omega, segment_size=2**20, nprocesses=None):
    '''(1/log omega) sum_{x/omega <= n <= x} g(n)/n.
    '''

    omega = resolve_omega(omega, x)
    check_omega(x, omega)

    spec = spec.resolve(x)
    lo, hi = window_bounds(x, omega)
    return window_sum(spec, lo, hi, harmonic=True, segment_size=segment_size,
                                        nprocesses=nprocesses)/math.log(omega)


def pretentious_distance(f, g, X):
    '''D(f, g; X) = (sum_{p <= X} (1 - f(p)g(p))/p)^(1/2) for real f, g.
    '''

    if X < 2:
        raise DomainError("X must be >= 2, got {}".format(X))

    f = f.resolve(X)
    g = g.resolve(X)
    primes = primes_up_to(int(X))
    terms = (1. - prime_values(f, primes)*prime_values(g, primes))/primes
    return math.sqrt(max(exact_sum(terms), 0.))


def _omega_kernel(seg, lo, hi, y, kmax):
    counts = seg.count_above(y)[lo - seg.lo:hi - seg.lo]
    return np.bincount(counts, minlength=kmax + 1)[:kmax + 1].astype(np.float64)


def omega_distribution(y, x, segment_size=2**20, nprocesses=None):
    '''Frequencies (1/x) #{x <= n <= 2x : omega_{>y}(n) = k} for k = 0, 1, ...
    '''

    lo, hi = int(math.ceil(x)), int(math.floor(2*x)) + 1
    # n <= 2x has fewer than log(2x)/log(y) distinct prime factors above y
    kmax = int(math.log(2*x)/math.log(max(y, 2.))) + 1
    parts = scan_segments(_omega_kernel, lo, hi, args=(y, kmax),
                          segment_size=segment_size, nprocesses=nprocesses)
    return np.array(merge_partials(parts))/x
