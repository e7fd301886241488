#!/usr/bin/env python
'''Segmented factor sieve. For every integer n in a half-open range [lo, hi)
the sieve records the distinct prime factors of n (ascending) with their
multiplicities, together with the largest prime factor P+(n), where P+(1) = 1.

Each segment keeps a residual array initialised to n. For every sieving prime
p <= sqrt(hi - 1) the residuals of multiples of p are divided by p as often as
possible, recording (p, e). Whatever is left above 1 is a single prime larger
than every sieving prime and is appended last. The factor lists of a segment
are stored in CSR form: flat <primes> and <exps> arrays, indexed through the
per-offset <starts> and <counts> arrays.
'''
from __future__ import absolute_import

import dataclasses
import logging
import math
from fractions import Fraction

import numpy as np

from multcorr.utilities.errors import CapacityError, DomainError, IntegrityError, \
                                                                        RangeError

logger = logging.getLogger(__name__)

# residuals are held in int64 and the sieving primes up to sqrt(WORD_LIMIT) are
# tabulated in memory (2**24 ~ 1.7e7)
WORD_LIMIT = 2**48
DEFAULT_SEGMENT = 2**20

# 2*3*5*...*47 > 2**64
MAX_FACTORS = 15

# relative tolerance below which p > t**a is settled by exact integer powering
POWER_GUARD = 1e-12
MAX_DENOMINATOR = 1000


def primes_up_to(limit):
    '''Odd-only sieve of Eratosthenes returning all primes <= <limit> as an
    int64 array.
    '''

    if limit < 2:
        return np.array([], dtype=np.int64)

    # index i <-> odd number 2i + 1
    sieve = np.ones(limit//2 + 1, dtype=bool)
    sieve[0] = False
    for i in range(1, (math.isqrt(limit) - 1)//2 + 1):
        if sieve[i]:
            p = 2*i + 1
            sieve[p*p//2::p] = False

    odd = 2*np.nonzero(sieve)[0] + 1
    odd = odd[odd <= limit]
    return np.concatenate((np.array([2], dtype=np.int64), odd.astype(np.int64)))


class _PrimeCache(object):
    '''Sieving primes, recomputed only when a larger bound is requested.
    '''

    def __init__(self):
        self.limit = 1
        self.primes = np.array([], dtype=np.int64)

    def up_to(self, limit):
        if limit > self.limit:
            # grow geometrically so that a slowly increasing <hi> does not
            # trigger a rebuild for every request
            new_limit = max(limit, 2*self.limit)
            logger.debug("Rebuilding sieving primes up to %d", new_limit)
            self.primes = primes_up_to(new_limit)
            self.primes.setflags(write=False)
            self.limit = new_limit

        n = np.searchsorted(self.primes, limit, side='right')
        return self.primes[:n]


_prime_cache = _PrimeCache()


def sieving_primes(hi):
    '''Primes needed to factor every integer below <hi>.
    '''

    return _prime_cache.up_to(math.isqrt(max(hi - 1, 1)))


@dataclasses.dataclass(frozen=True)
class SieveRequest:
    lo: int
    hi: int
    segment_size: int = DEFAULT_SEGMENT

    def __post_init__(self):
        if self.lo < 1:
            raise DomainError("lower bound must be >= 1, got {}".format(self.lo))
        if self.hi <= self.lo:
            raise DomainError("empty range [{}, {})".format(self.lo, self.hi))
        if self.hi > WORD_LIMIT:
            raise CapacityError("upper bound {} exceeds the word limit 2**48".format(
                                                                        self.hi))
        if self.segment_size < 1:
            raise DomainError("segment size must be >= 1, got {}".format(
                                                                self.segment_size))

    def bounds(self):
        '''Half-open segment boundaries. They depend only on <lo>, <hi> and
        <segment_size>.
        '''

        for start in range(self.lo, self.hi, self.segment_size):
            yield start, min(start + self.segment_size, self.hi)


@dataclasses.dataclass(frozen=True, repr=False)
class FactoredSegment:
    '''Factorizations of every integer in [lo, hi). All arrays are read-only.

    primes, exps : flat factor arrays (int64, int8), sorted by (offset, prime)
    owner        : offset of the integer each flat entry belongs to
    starts, counts : CSR index into the flat arrays, one entry per offset
    lpf          : largest prime factor per offset, with P+(1) = 1
    '''

    lo: int
    hi: int
    primes: np.ndarray
    exps: np.ndarray
    owner: np.ndarray
    starts: np.ndarray
    counts: np.ndarray
    lpf: np.ndarray

    def __repr__(self):
        return 'FactoredSegment([{}, {}), {} factors)'.format(self.lo, self.hi,
                                                              len(self.primes))

    def __len__(self):
        return self.hi - self.lo

    @property
    def values(self):
        return np.arange(self.lo, self.hi, dtype=np.int64)

    def offset(self, n):
        if not (self.lo <= n < self.hi):
            raise RangeError("{} is outside the sieved range [{}, {})".format(n,
                                                                self.lo, self.hi))
        return int(n - self.lo)

    def factors(self, n):
        '''Factor list [(p, e), ...] of <n>, primes ascending.
        '''

        i = self.offset(n)
        s, c = self.starts[i], self.counts[i]
        return [(int(p), int(e)) for p, e in zip(self.primes[s:s+c], self.exps[s:s+c])]

    def largest_prime_factor(self, n):
        return int(self.lpf[self.offset(n)])

    def count_above(self, y):
        '''Per-offset number of distinct primes strictly greater than <y>.
        '''

        return np.bincount(self.owner, weights=(self.primes > y).astype(np.float64),
                           minlength=len(self)).astype(np.int64)

    def big_omega(self):
        '''Per-offset number of prime factors counted with multiplicity.
        '''

        return np.bincount(self.owner, weights=self.exps,
                           minlength=len(self)).astype(np.int64)

    def product_check(self):
        '''Multiplies every factor list back out and compares with n. Returns
        the offsets that disagree (empty when the segment is consistent).
        '''

        logs = np.bincount(self.owner, weights=self.exps*np.log(self.primes),
                           minlength=len(self))
        target = np.log(self.values.astype(np.float64))
        suspect = np.nonzero(np.abs(logs - target) > 1e-9*np.maximum(1., target))[0]

        bad = []
        for i in suspect:
            n = self.lo + int(i)
            prod = 1
            for p, e in self.factors(n):
                prod *= p**e
            if prod != n:
                bad.append(int(i))

        return np.array(bad, dtype=np.int64)


def _freeze(*arrays):
    for arr in arrays:
        arr.setflags(write=False)


def sieve_segment(lo, hi, primes=None):
    '''Factors every integer in [lo, hi) and returns a <FactoredSegment>.
    <primes> must contain every prime <= sqrt(hi - 1); it is computed if not
    supplied.
    '''

    if lo < 1:
        raise DomainError("lower bound must be >= 1, got {}".format(lo))
    if hi > WORD_LIMIT:
        raise CapacityError("upper bound {} exceeds the word limit 2**48".format(hi))

    if primes is None:
        primes = sieving_primes(hi)

    size = hi - lo
    residual = np.arange(lo, hi, dtype=np.int64)
    limit = math.isqrt(max(hi - 1, 1))

    offs, ps, es = [], [], []
    for p in primes:
        p = int(p)
        if p > limit:
            break

        first = (-lo) % p
        if first >= size:
            continue

        idx = np.arange(first, size, p, dtype=np.int64)
        residual[idx] //= p
        e = np.ones(len(idx), dtype=np.int8)

        # divide out higher powers of p
        active = idx
        pos = np.arange(len(idx))
        while True:
            mask = residual[active] % p == 0
            if not mask.any():
                break
            active = active[mask]
            pos = pos[mask]
            residual[active] //= p
            e[pos] += 1

        offs.append(idx)
        ps.append(np.full(len(idx), p, dtype=np.int64))
        es.append(e)

    big = np.nonzero(residual > 1)[0]
    offs.append(big.astype(np.int64))
    ps.append(residual[big])
    es.append(np.ones(len(big), dtype=np.int8))

    owner = np.concatenate(offs)
    flat_p = np.concatenate(ps)
    flat_e = np.concatenate(es)

    order = np.lexsort((flat_p, owner))
    owner, flat_p, flat_e = owner[order], flat_p[order], flat_e[order]

    counts = np.bincount(owner, minlength=size).astype(np.int64)
    starts = np.zeros(size, dtype=np.int64)
    if size > 1:
        starts[1:] = np.cumsum(counts)[:-1]

    if len(counts) and counts.max() > MAX_FACTORS:
        raise CapacityError("more than {} distinct primes in [{}, {})".format(
                                                            MAX_FACTORS, lo, hi))

    lpf = np.ones(size, dtype=np.int64)
    has = counts > 0
    lpf[has] = flat_p[starts[has] + counts[has] - 1]

    _freeze(owner, flat_p, flat_e, counts, starts, lpf)
    return FactoredSegment(lo, hi, flat_p, flat_e, owner, starts, counts, lpf)


def sieve_range(req):
    '''Generator of <FactoredSegment>s covering [req.lo, req.hi) in ascending
    order.
    '''

    primes = sieving_primes(req.hi)
    for lo, hi in req.bounds():
        logger.debug("Sieving segment [%d, %d)", lo, hi)
        yield sieve_segment(lo, hi, primes)


def factor_range(lo, hi):
    '''Factors [lo, hi) as a single segment.
    '''

    SieveRequest(lo, hi, max(hi - lo, 1))
    return sieve_segment(lo, hi)


def omega_gt(seg, n, y):
    '''Number of distinct primes p | n with p > y.
    '''

    if not (math.isfinite(y) and y > 1):
        raise DomainError("threshold must be finite and > 1, got {}".format(y))

    i = seg.offset(n)
    s, c = seg.starts[i], seg.counts[i]
    return int(np.count_nonzero(seg.primes[s:s+c] > y))


def lpf(seg, n):
    '''Largest prime factor P+(n), with P+(1) = 1.
    '''

    return seg.largest_prime_factor(n)


def trial_division(n):
    '''Factor list of <n> by trial division. Slow; used as an oracle.
    '''

    if n < 1:
        raise DomainError("{} is not a positive integer".format(n))

    factors = []
    p = 2
    while p*p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        factors.append((n, 1))

    return factors


def check_factors(n, factors):
    '''Raises <IntegrityError> unless <factors> is a valid factorization of n
    with strictly increasing primes.
    '''

    prod = 1
    last = 1
    for p, e in factors:
        if p <= last or e < 1:
            raise IntegrityError("factor list {} of {} is not ordered".format(
                                                                    factors, n))
        prod *= p**e
        last = p

    if prod != n:
        raise IntegrityError("factor list {} multiplies to {}, not {}".format(
                                                                factors, prod, n))
    return


def format_factor_line(n, factors):
    '''n<TAB>p1^e1 p2^e2 ...
    '''

    return '{}\t{}'.format(n, ' '.join('{}^{}'.format(p, e) for p, e in factors))


def _exponent_fraction(a):
    '''(r, s) with a = r/s and s <= MAX_DENOMINATOR, or None when <a> is not
    such a fraction; ties are then left to the floating point comparison.
    '''

    frac = Fraction(a).limit_denominator(MAX_DENOMINATOR)
    if abs(float(frac) - a) > POWER_GUARD*max(1., abs(a)):
        return None
    return frac.numerator, frac.denominator


def exceeds_power(p, t, a):
    '''Vectorised test p > t**a for positive integer arrays <p>, <t> and a real
    exponent <a> >= 0. Comparisons within <POWER_GUARD> of equality are settled
    exactly as p**s > t**r where a = r/s.
    '''

    p = np.asarray(p, dtype=np.int64)
    t = np.asarray(t, dtype=np.int64)
    p, t = np.broadcast_arrays(p, t)

    lp = np.log(p.astype(np.float64))
    rhs = a*np.log(t.astype(np.float64))
    diff = lp - rhs
    result = diff > 0

    close = np.abs(diff) <= POWER_GUARD*np.maximum(1., np.abs(lp))
    fraction = _exponent_fraction(a) if close.any() else None
    if fraction is not None:
        r, s = fraction
        for i in np.flatnonzero(close):
            pi, ti = int(p.flat[i]), int(t.flat[i])
            result.flat[i] = pi**s > ti**r

    return result


def exceeds_scaled_power(q, p, t, a):
    '''Vectorised test q > p*t**a, settled exactly near equality as
    q**s > p**s * t**r where a = r/s.
    '''

    q = np.asarray(q, dtype=np.int64)
    p = np.asarray(p, dtype=np.int64)
    t = np.asarray(t, dtype=np.int64)
    q, p, t = np.broadcast_arrays(q, p, t)

    lq = np.log(q.astype(np.float64))
    diff = lq - np.log(p.astype(np.float64)) - a*np.log(t.astype(np.float64))
    result = diff > 0

    close = np.abs(diff) <= POWER_GUARD*np.maximum(1., np.abs(lq))
    fraction = _exponent_fraction(a) if close.any() else None
    if fraction is not None:
        r, s = fraction
        for i in np.flatnonzero(close):
            qi, pi, ti = int(q.flat[i]), int(p.flat[i]), int(t.flat[i])
            result.flat[i] = qi**s > pi**s*ti**r

    return result


def omega_above(seg, a, base_offset=0):
    '''Per-offset omega_{>t^a}(m) for the integers m of <seg>, with the
    threshold taken at t = m - <base_offset>. Used for omega_{>n^a}(n + 1)
    by factoring n + 1 and passing base_offset=1.
    '''

    t = seg.owner + (seg.lo - base_offset)
    t = np.maximum(t, 1)
    big = exceeds_power(seg.primes, t, a)
    return np.bincount(seg.owner, weights=big.astype(np.float64), minlength=len(seg)).astype(np.int64)
