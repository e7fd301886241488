#!/usr/bin/env python
'''Parallel scans over sieve segments. A scan splits [lo, hi) into segments
whose boundaries depend only on the segment size, factors each segment
(optionally padded on either side so that shifted integers n + h are
available) and applies a kernel to it. Kernels return a tuple of partial sums
computed with <exact_sum>; the partials are merged in segment order, so the
result does not depend on the number of worker processes.
'''
from __future__ import absolute_import

import logging
import math
import os
from multiprocessing import Pool

import numpy as np

from multcorr.sieve.factor_sieve import DEFAULT_SEGMENT, SieveRequest, sieve_segment, \
                                                                    sieving_primes
from multcorr.utilities.errors import DomainError, UsageError

logger = logging.getLogger(__name__)

THREADS_VARIABLE = 'MULTCORR_THREADS'

# sieving primes shared with worker processes through the pool initializer
_worker_primes = None


def resolve_threads(nprocesses=None):
    '''Number of worker processes: <nprocesses> if given, else the value of
    $MULTCORR_THREADS, else the number of available CPUs.
    '''

    if nprocesses is None:
        env = os.environ.get(THREADS_VARIABLE)
        if env:
            try:
                nprocesses = int(env)
            except ValueError:
                raise UsageError('{}={} is not an integer'.format(THREADS_VARIABLE, env))
        else:
            nprocesses = os.cpu_count() or 1

    if nprocesses < 1:
        raise UsageError('number of threads must be >= 1, got {}'.format(nprocesses))

    return nprocesses


def exact_sum(values):
    '''Correctly rounded sum of an array (Shewchuk summation via math.fsum).
    '''

    return math.fsum(np.asarray(values, dtype=np.float64).ravel().tolist())


def harmonic_weight(lo, hi):
    '''Sum of 1/n over lo <= n < hi, correctly rounded.
    '''

    if hi <= lo:
        return 0.
    return exact_sum(1./np.arange(lo, hi, dtype=np.float64))


def _init_worker(primes):
    global _worker_primes
    _worker_primes = primes


def _run_task(task):
    kernel, lo, hi, pad_left, pad_right, args = task
    if pad_left is None:
        # plain range, no factorization needed
        return kernel(lo, hi, *args)
    seg_lo = max(lo - pad_left, 1)
    seg = sieve_segment(seg_lo, hi + pad_right, _worker_primes)
    return kernel(seg, lo, hi, *args)


def scan_segments(kernel, lo, hi, args=(), pad_left=0, pad_right=0,
                  segment_size=DEFAULT_SEGMENT, nprocesses=None):
    '''Applies <kernel>(seg, seg_lo, seg_hi, *args) to every segment of
    [lo, hi), where <seg> factors [seg_lo - pad_left, seg_hi + pad_right)
    (clipped below at 1). <kernel> must be a module-level function so that it
    can be sent to worker processes. Returns the list of kernel results in
    segment order.
    '''

    SieveRequest(max(lo - pad_left, 1), hi + pad_right, segment_size)
    req = SieveRequest(lo, hi, segment_size)

    primes = sieving_primes(hi + pad_right)
    tasks = [(kernel, s, e, pad_left, pad_right, args) for s, e in req.bounds()]

    nprocesses = min(resolve_threads(nprocesses), len(tasks))
    logger.info("Scanning [%d, %d) in %d segment(s) with %d process(es)", lo, hi,
                                                            len(tasks), nprocesses)

    if nprocesses == 1:
        _init_worker(primes)
        return [_run_task(task) for task in tasks]

    pool = Pool(processes=nprocesses, initializer=_init_worker, initargs=(primes,))
    pending = [pool.apply_async(_run_task, args=(task,)) for task in tasks]
    pool.close()
    results = [p.get() for p in pending]
    pool.join()

    return results


def merge_partials(results):
    '''Merges per-segment tuples (or arrays) of partial sums component by
    component, in segment order.
    '''

    if not results:
        return ()

    table = np.array([np.asarray(r, dtype=np.float64).ravel() for r in results])
    return tuple(exact_sum(table[:, j]) for j in range(table.shape[1]))


def scan_ranges(kernel, lo, hi, args=(), segment_size=DEFAULT_SEGMENT,
                                                            nprocesses=None):
    '''As <scan_segments>, but <kernel>(seg_lo, seg_hi, *args) receives only
    the segment bounds. Used by scans that do not need factorizations.
    '''

    req = SieveRequest(lo, hi, segment_size)
    tasks = [(kernel, s, e, None, None, args) for s, e in req.bounds()]

    nprocesses = min(resolve_threads(nprocesses), len(tasks))
    logger.info("Scanning [%d, %d) in %d segment(s) with %d process(es)", lo, hi,
                                                            len(tasks), nprocesses)

    if nprocesses == 1:
        return [_run_task(task) for task in tasks]

    pool = Pool(processes=nprocesses)
    pending = [pool.apply_async(_run_task, args=(task,)) for task in tasks]
    pool.close()
    results = [p.get() for p in pending]
    pool.join()

    return results


def check_omega(x, omega):
    '''Window functions must satisfy 1 < omega <= log(3x); omega = 1 would
    give an empty normalisation 1/log(omega).
    '''

    if not omega > 1:
        raise DomainError("window function must exceed 1, got {}".format(omega))
    if omega > math.log(3*x) + 1e-12:
        raise DomainError("window function {} exceeds log(3x) = {}".format(omega,
                                                                math.log(3*x)))


def window_bounds(x, omega):
    '''Half-open integer bounds [lo, hi) of the window x/omega <= n <= x.
    '''

    return max(int(math.ceil(x/omega - 1e-9)), 1), int(math.floor(x)) + 1
