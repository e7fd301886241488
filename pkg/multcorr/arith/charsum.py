#!/usr/bin/env python
'''Real characters chi_Q(n) = (n|Q) for odd squarefree Q, and the character
sums built from them: logarithmic correlations of chi_Q(n)chi_Q(n + h), and
densities of consecutive quadratic non-residue pairs.

The scalar <jacobi> is the usual binary algorithm. Bulk evaluation goes through
<jacobi_array>, which either reads a table of one period of chi_Q (assembled
from the Legendre tables of the primes dividing Q) or runs the binary
algorithm on whole numpy arrays at once.
'''
from __future__ import absolute_import

import dataclasses
import functools
import logging
import math
import random

import numpy as np

from multcorr.sieve.factor_sieve import primes_up_to
from multcorr.sieve.segments import check_omega, exact_sum, harmonic_weight, merge_partials, \
                                                        scan_ranges, window_bounds
from multcorr.utilities.control_functions import resolve_omega
from multcorr.utilities.errors import DomainError, ValidationError

logger = logging.getLogger(__name__)

# largest modulus for which a full period of chi_Q is tabulated
TABLE_LIMIT = 10**7

TRIAL_LIMIT = 10**6
MODULUS_LIMIT = 2**63

# Q <= x**(4 - BURGESS_EPS) is reported as inside the Burgess range
BURGESS_EPS = 0.01

# Miller-Rabin with these bases is deterministic below 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def jacobi(n, Q):
    '''Jacobi symbol (n|Q) for odd Q >= 1.
    '''

    if Q < 1 or Q % 2 == 0:
        raise DomainError("Jacobi symbol needs an odd positive modulus, got {}".format(Q))

    n %= Q
    j = 1
    while n != 0:
        while n % 2 == 0:
            n //= 2
            if Q % 8 in (3, 5):
                j = -j
        n, Q = Q, n
        if n % 4 == 3 and Q % 4 == 3:
            j = -j
        n %= Q

    return j if Q == 1 else 0


def jacobi_binary(n, Q):
    '''Binary Jacobi algorithm applied elementwise to the integer array <n>.
    '''

    if Q < 1 or Q % 2 == 0:
        raise DomainError("Jacobi symbol needs an odd positive modulus, got {}".format(Q))

    a = np.mod(np.asarray(n, dtype=np.int64), Q)
    shape = a.shape
    a = a.ravel()
    b = np.full(a.shape, Q, dtype=np.int64)
    j = np.ones(a.shape, dtype=np.int8)

    while True:
        active = a != 0
        if not active.any():
            break

        while True:
            even = active & (a % 2 == 0)
            if not even.any():
                break
            a[even] //= 2
            r = b[even] % 8
            j[even] *= np.where((r == 3) | (r == 5), -1, 1).astype(np.int8)

        na, nb = b[active], a[active]
        flip = (na % 4 == 3) & (nb % 4 == 3)
        j[np.flatnonzero(active)[flip]] *= -1
        a[active] = na % nb
        b[active] = nb

    return np.where(b == 1, j, 0).astype(np.int8).reshape(shape)


@functools.lru_cache(maxsize=64)
def legendre_table(p):
    '''Legendre symbol (r|p) for r = 0, ..., p - 1.
    '''

    table = -np.ones(p, dtype=np.int8)
    table[0] = 0
    squares = (np.arange(1, (p + 1)//2, dtype=np.int64)**2) % p
    table[squares] = 1
    table.setflags(write=False)
    return table


@functools.lru_cache(maxsize=16)
def character_table(Q):
    '''One period of (r|Q), r = 0, ..., Q - 1, built as the product of the
    Legendre tables of the prime factors of Q.
    '''

    if Q > TABLE_LIMIT:
        raise DomainError("modulus {} too large to tabulate".format(Q))

    r = np.arange(Q, dtype=np.int64)
    table = np.ones(Q, dtype=np.int8)
    for p, e in _factor_odd(Q):
        table *= legendre_table(p)[r % p]**e
    table.setflags(write=False)
    return table


def jacobi_array(n, Q, kernel='auto'):
    '''(n|Q) elementwise. <kernel> is "table", "binary" or "auto" (table when
    Q <= TABLE_LIMIT).
    '''

    if Q < 1 or Q % 2 == 0:
        raise DomainError("Jacobi symbol needs an odd positive modulus, got {}".format(Q))

    if kernel == 'auto':
        kernel = 'table' if Q <= TABLE_LIMIT else 'binary'

    if kernel == 'table':
        return character_table(Q)[np.mod(np.asarray(n, dtype=np.int64), Q)]
    elif kernel == 'binary':
        return jacobi_binary(n, Q)

    raise ValueError("{} is not a valid Jacobi kernel".format(kernel))


def is_probable_prime(n):
    '''Deterministic Miller-Rabin for n < 3.3e24.
    '''

    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p

    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1

    for b in _MR_BASES:
        x = pow(b, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = pow(x, 2, n)
            if x == n - 1:
                break
        else:
            return False

    return True


def pollard_brent(n, rng):
    '''Returns a divisor 1 < d < n of the odd composite <n> (Brent's variant of
    Pollard rho, restarting with a new polynomial on failure).
    '''

    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n - 1)
        m = 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y*y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y*y + c) % n
                    q = q*abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2

        if g == n:
            g = 1
            while g == 1:
                ys = (ys*ys + c) % n
                g = math.gcd(abs(x - ys), n)

        if g != n:
            return g


@functools.lru_cache(maxsize=1)
def _small_primes():
    return primes_up_to(TRIAL_LIMIT).tolist()


def _factor_odd(n):
    '''Factor list [(p, e), ...] of the odd integer <n>: trial division up to
    TRIAL_LIMIT, then Miller-Rabin and Pollard rho on the cofactor.
    '''

    factors = dict()
    for p in _small_primes():
        if p*p > n:
            break
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p

    stack = [n] if n > 1 else []
    rng = random.Random(n)
    while stack:
        m = stack.pop()
        if m < TRIAL_LIMIT**2 or is_probable_prime(m):
            factors[m] = factors.get(m, 0) + 1
        else:
            d = pollard_brent(m, rng)
            stack.extend((d, m//d))

    return sorted(factors.items())


@dataclasses.dataclass(frozen=True)
class CharacterModulus:
    Q: int
    prime_factors: tuple


def factor_modulus(Q):
    '''Factors the odd squarefree modulus <Q> of a real primitive character.
    '''

    Q = int(Q)
    if Q % 2 == 0:
        raise DomainError("modulus {} is even".format(Q))
    if not (1 < Q < MODULUS_LIMIT):
        raise DomainError("modulus must satisfy 1 < Q < 2**63, got {}".format(Q))

    factors = _factor_odd(Q)
    for p, e in factors:
        if e > 1:
            raise ValidationError("modulus {} is not squarefree ({}^{} divides it)".format(
                                                                        Q, p, e))

    return CharacterModulus(Q, tuple(p for p, e in factors))


def euler_product_factor(mod):
    '''prod_{p | Q} (1 - 2/p).
    '''

    prod = 1.
    for p in mod.prime_factors:
        prod *= 1. - 2./p
    return prod


def periodic_mean(mod, h):
    '''(1/Q) sum_{r mod Q} chi(r)chi(r + h). Multiplicative over p | Q: each
    prime contributes -1/p if p does not divide h and (p - 1)/p otherwise.
    '''

    value = 1.
    for p in mod.prime_factors:
        value *= (p - 1.)/p if h % p == 0 else -1./p
    return value


def periodic_pair_density(mod):
    '''Proportion of residues r mod Q with chi(r) = chi(r + 1) = -1, equal to
    (prod (p - 2) - prod (-chi_p(-1)))/(4Q).
    '''

    main = 1
    sign = 1
    for p in mod.prime_factors:
        main *= p - 2
        sign *= -1 if p % 4 == 1 else 1

    return (main - sign)/(4.*mod.Q)


def in_burgess_range(Q, x, eps=BURGESS_EPS):
    return math.log(Q) <= (4. - eps)*math.log(x)


def _burgess_kernel(lo, hi, Q, h, kernel):
    n = np.arange(lo, hi, dtype=np.int64)
    if h < 0:
        n = n[n + h >= 1]
    chi = jacobi_array(n, Q, kernel)*jacobi_array(n + h, Q, kernel)
    return exact_sum(chi/n.astype(np.float64)), len(n)


@dataclasses.dataclass
class BurgessReport:
    Q: int
    h: int
    x: int
    omega: float
    value: float
    periodic_mean: float
    in_regime: bool
    n_terms: int


def burgess_report(Q, h, x, omega='logx', kernel='auto', segment_size=2**20,
                                                                nprocesses=None):
    '''(1/log omega) sum_{x/omega <= n <= x} chi_Q(n(n + h))/n, evaluated as
    chi_Q(n)chi_Q(n + h), together with the periodic mean it tends to for
    fixed Q and a flag recording whether Q <= x^(4 - eps).
    '''

    if h == 0:
        raise DomainError("shift h must be nonzero")

    mod = factor_modulus(Q)
    omega = resolve_omega(omega, x)
    check_omega(x, omega)

    in_regime = in_burgess_range(Q, x)
    if not in_regime:
        logger.warning("Q = %d lies outside the Burgess range Q <= x^%.2f", Q,
                                                                4 - BURGESS_EPS)

    lo, hi = window_bounds(x, omega)
    parts = scan_ranges(_burgess_kernel, lo, hi, args=(mod.Q, h, kernel),
                        segment_size=segment_size, nprocesses=nprocesses)
    total, n_terms = merge_partials(parts)

    return BurgessReport(Q=mod.Q, h=h, x=x, omega=omega,
                         value=total/math.log(omega),
                         periodic_mean=periodic_mean(mod, h), in_regime=in_regime,
                         n_terms=int(n_terms))


def burgess_corr(Q, h, x, omega='logx', **kwargs):
    return burgess_report(Q, h, x, omega, **kwargs).value


def _pair_kernel(lo, hi, Q):
    '''Partial sums for the sign pattern of (chi(n), chi(n + 1)) over [lo, hi):
    harmonic and plain counts of the four cells (++, +-, -+, --), followed by
    the count of n with gcd(n(n + 1), Q) = 1.
    '''

    n = np.arange(lo, hi, dtype=np.int64)
    c0 = jacobi_array(n, Q)
    c1 = jacobi_array(n + 1, Q)
    inv = 1./n.astype(np.float64)

    harmonic, plain = [], []
    for s0, s1 in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        cell = (c0 == s0) & (c1 == s1)
        harmonic.append(exact_sum(inv[cell]))
        plain.append(float(np.count_nonzero(cell)))

    coprime = float(np.count_nonzero((c0 != 0) & (c1 != 0)))
    return tuple(harmonic) + tuple(plain) + (coprime,)


_CELLS = ('++', '+-', '-+', '--')


@dataclasses.dataclass
class QnrPairReport:
    Q: int
    x: int
    log_density: float
    natural_density: float
    target: float
    periodic_density: float
    tail_log_density: float = None
    omega: float = None


def _pair_sums(Q, lo, hi, segment_size, nprocesses):
    parts = scan_ranges(_pair_kernel, lo, hi, args=(Q,), segment_size=segment_size,
                                                            nprocesses=nprocesses)
    return merge_partials(parts)


def qnr_pair_densities(Q, x, omega=None, segment_size=2**20, nprocesses=None):
    '''Logarithmic and natural densities of {n <= x: chi(n) = chi(n + 1) = -1}.
    The logarithmic density is normalised by sum_{n <= x} 1/n. If <omega> is
    given, the density over the tail window [x/omega, x] is reported as well.
    '''

    mod = factor_modulus(Q)
    if x < 2:
        raise DomainError("x must be >= 2, got {}".format(x))

    sums = _pair_sums(mod.Q, 1, int(x) + 1, segment_size, nprocesses)
    report = QnrPairReport(Q=mod.Q, x=int(x),
                           log_density=sums[3]/harmonic_weight(1, int(x) + 1),
                           natural_density=sums[7]/x,
                           target=euler_product_factor(mod)/4.,
                           periodic_density=periodic_pair_density(mod))

    if omega is not None:
        omega = resolve_omega(omega, x)
        check_omega(x, omega)
        lo, hi = window_bounds(x, omega)
        tail = _pair_sums(mod.Q, lo, hi, segment_size, nprocesses)
        report.tail_log_density = tail[3]/harmonic_weight(lo, hi)
        report.omega = omega

    return report


def sign_pair_cells(Q, x, segment_size=2**20, nprocesses=None):
    '''Natural densities over n <= x of the four sign cells of
    (chi(n), chi(n + 1)) and of {gcd(n(n + 1), Q) = 1}.
    '''

    mod = factor_modulus(Q)
    sums = _pair_sums(mod.Q, 1, int(x) + 1, segment_size, nprocesses)
    cells = dict((name, sums[4 + i]/x) for i, name in enumerate(_CELLS))
    cells['coprime'] = sums[8]/x
    return cells
