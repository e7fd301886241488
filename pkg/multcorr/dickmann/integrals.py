#!/usr/bin/env python
'''Integrals of the Dickman function that give the limiting densities of the
large-prime-factor events.

I(alpha, m) = int rho((1 - u_1 - ... - u_m)/alpha)/(u_1...u_m) du over
alpha <= u_i <= 1, u_1 + ... + u_m <= 1. Writing t for the remaining budget in
units of alpha, the integral is G_m(1/alpha) with

    G_0(t) = rho(t),    G_k(t) = int_{k-1}^{t-1} G_{k-1}(s)/(t - s) ds,

which is evaluated by nested Gauss-Legendre rules on panels split at the
integers (where rho and the G_k lose smoothness). For m >= 4 the default is a
stratified Monte Carlo estimate over the simplex.

T(alpha) = int int u(x)u(y) dx dy over {0 <= x, y <= 1, y >= x + alpha} with
u(x) = rho(1/x - 1)/x, computed as an iterated composite Gauss-Legendre
integral with panels split at x = 1/k.
'''
from __future__ import absolute_import

import dataclasses
import functools
import logging
import math

import numpy as np
from numpy.polynomial.legendre import leggauss

from multcorr.utilities.errors import DomainError

logger = logging.getLogger(__name__)

DEFAULT_NODES = 64
DEFAULT_SAMPLES = 2**20
DEFAULT_SEED = 20160601

METHODS = ('auto', 'tensor_quadrature', 'monte_carlo')

G_CHUNK = 2**22


@functools.lru_cache(maxsize=16)
def _gauss(n):
    '''Gauss-Legendre nodes and weights on [0, 1].
    '''

    x, w = leggauss(n)
    return 0.5*(x + 1.), 0.5*w


@dataclasses.dataclass(frozen=True)
class IntegralRequest:
    alpha: float
    m: int
    method: str = 'auto'
    nodes: int = DEFAULT_NODES
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not (0 < self.alpha < 1):
            raise DomainError("alpha must lie in (0, 1), got {}".format(self.alpha))
        if self.m < 0 or int(self.m) != self.m:
            raise DomainError("m must be a non-negative integer, got {}".format(self.m))
        if self.method not in METHODS:
            raise DomainError("{} is not a valid integration method".format(self.method))
        if self.nodes < 2 or self.samples < 16:
            raise DomainError("too few quadrature nodes or samples")

    @property
    def empty(self):
        '''m >= 1/alpha leaves a region of measure zero.
        '''

        return self.m*self.alpha >= 1 - 1e-15

    @property
    def resolved_method(self):
        if self.method != 'auto':
            return self.method
        return 'tensor_quadrature' if self.m <= 3 else 'monte_carlo'


@dataclasses.dataclass
class IntegralResult:
    name: str
    alpha: float
    m: int
    method: str
    value: float
    error_estimate: float
    nodes: int = None
    samples: int = None
    seed: int = None


def _panel_rule(lo, hi, nodes):
    '''Nodes and weights of the composite rule on [lo, hi] (arrays of equal
    shape) with panels split at the integers. Returns (s, w) of shape
    lo.shape + (n_panels*nodes,); absent panels carry zero weight.
    '''

    lo = np.asarray(lo, dtype=np.float64)
    hi = np.asarray(hi, dtype=np.float64)
    gx, gw = _gauss(nodes)

    first = int(math.floor(lo.min())) if lo.size else 0
    last = int(math.ceil(hi.max())) if hi.size else 0

    ss, ws = [], []
    for j in range(first, max(last, first + 1)):
        a = np.clip(np.maximum(lo, j), None, hi)
        b = np.clip(np.minimum(hi, j + 1), a, None)
        length = b - a
        ss.append(a[..., None] + length[..., None]*gx)
        ws.append(length[..., None]*gw)

    return np.concatenate(ss, axis=-1), np.concatenate(ws, axis=-1)


def _G(table, k, t, nodes):
    '''G_k(t) for an array <t>.
    '''

    t = np.asarray(t, dtype=np.float64)
    if k == 0:
        return table.rho(t)

    out = np.zeros(t.shape)
    live = t > k
    if not live.any():
        return out

    values = []
    tl = t[live]
    # bound the size of the nested node arrays
    chunk = max(1, G_CHUNK//(nodes*int(math.ceil(tl.max()))**(k)))
    for start in range(0, len(tl), chunk):
        tc = tl[start:start + chunk]
        s, w = _panel_rule(np.full(tc.shape, k - 1.), tc - 1., nodes)
        inner = _G(table, k - 1, s.ravel(), nodes).reshape(s.shape)
        values.append(np.sum(w*inner/(tc[:, None] - s), axis=-1))

    out[live] = np.concatenate(values)
    return out


def _tensor_I(table, alpha, m, nodes):
    return float(_G(table, m, np.array([1./alpha]), nodes)[0])


def _monte_carlo_I(table, alpha, m, samples, seed):
    '''Stratified Monte Carlo over the simplex v_i = u_i - alpha >= 0,
    sum v_i <= L = 1 - m*alpha. The radial coordinate r = sum(v)/L has density
    m*r^(m-1) and is stratified; the direction is uniform (Dirichlet(1,...,1)).
    Returns (value, standard error).
    '''

    rng = np.random.default_rng(seed)
    L = 1. - m*alpha
    volume = L**m/math.factorial(m)

    strata = (np.arange(samples) + rng.random(samples))/samples
    r = strata**(1./m)
    direction = rng.dirichlet(np.ones(m), size=samples)
    v = L*r[:, None]*direction

    u = alpha + v
    f = table.rho((1. - u.sum(axis=1))/alpha)/np.prod(u, axis=1)

    value = volume*f.mean()
    # pairs of neighbouring strata give a conservative variance estimate
    pairs = f[:samples - samples % 2].reshape(-1, 2)
    stderr = volume*math.sqrt(np.sum((pairs[:, 0] - pairs[:, 1])**2)/2.)/samples
    return float(value), float(stderr)


def integral_I_result(table, req):
    '''I(alpha, m) with an error estimate.
    '''

    if req.m == 0:
        value = float(table.rho(1./req.alpha))
        return IntegralResult('I', req.alpha, 0, 'closed_form', value, 0.)

    if req.empty:
        return IntegralResult('I', req.alpha, req.m, 'empty_region', 0., 0.)

    method = req.resolved_method
    if method == 'tensor_quadrature':
        value = _tensor_I(table, req.alpha, req.m, req.nodes)
        coarse = _tensor_I(table, req.alpha, req.m, max(req.nodes//2, 2))
        return IntegralResult('I', req.alpha, req.m, method, value, abs(value - coarse),
                              nodes=req.nodes)

    logger.warning("Monte Carlo estimate of I(%g, %d) with %d samples", req.alpha, req.m,
                                                                    req.samples)
    value, stderr = _monte_carlo_I(table, req.alpha, req.m, req.samples, req.seed)
    return IntegralResult('I', req.alpha, req.m, method, value, stderr,
                          samples=req.samples, seed=req.seed)


def integral_I(table, req):
    return integral_I_result(table, req).value


def probability_sum(table, alpha, **kwargs):
    '''sum_{0 <= k < 1/alpha} I(alpha, k)/k!, which equals 1.
    '''

    total = 0.
    k = 0
    while k*alpha < 1 - 1e-15:
        total += integral_I(table, IntegralRequest(alpha, k, **kwargs))/math.factorial(k)
        k += 1
    return total


def _breakpoints(table):
    '''Panel boundaries for integrals of u(x) on [x_min, 1]: the points
    x = 1/k where u loses smoothness.
    '''

    kmax = int(math.floor(1./table.x_min))
    points = [1./k for k in range(kmax, 0, -1)]
    return np.array(sorted(set([table.x_min] + points)))


def u_integral(table, lo, hi=1., nodes=DEFAULT_NODES):
    '''int_lo^hi u(x) dx, vectorised over <lo>, by composite Gauss-Legendre
    with panels split at x = 1/k. Equals rho(1/hi) - rho(1/lo); u is taken as
    0 below x_min.
    '''

    lo = np.maximum(np.asarray(lo, dtype=np.float64), table.x_min)
    gx, gw = _gauss(nodes)
    bp = _breakpoints(table)
    bp = np.concatenate([bp[bp < hi], [hi]])

    total = np.zeros(lo.shape)
    for a0, b0 in zip(bp[:-1], bp[1:]):
        a = np.clip(np.maximum(lo, a0), None, b0)
        length = b0 - a
        if not np.any(length > 0):
            continue
        x = a[..., None] + length[..., None]*gx
        total += length*np.sum(gw*table.u_density(x), axis=-1)

    return total


def _T(table, alpha, nodes):
    '''Outer rule on [x_min, 1 - alpha] split at 1/k; inner integral of u over
    [x + alpha, 1] by <u_integral>.
    '''

    if alpha >= 1:
        return 0.

    bp = _breakpoints(table)
    bp = np.concatenate([bp[bp < 1. - alpha], [1. - alpha]])
    gx, gw = _gauss(nodes)
    x = (bp[:-1, None] + (bp[1:] - bp[:-1])[:, None]*gx).ravel()
    wx = ((bp[1:] - bp[:-1])[:, None]*gw).ravel()

    inner = u_integral(table, np.minimum(x + alpha, 1.), nodes=nodes)
    return float(np.sum(wx*table.u_density(x)*inner))


def integral_T_result(table, alpha, nodes=DEFAULT_NODES):
    '''T(alpha) with an error estimate: the change from halving the nodes
    plus the truncation of u below x_min (bounded by rho(u_max)).
    '''

    if not (0 <= alpha <= 1):
        raise DomainError("alpha must lie in [0, 1], got {}".format(alpha))

    value = _T(table, alpha, nodes)
    coarse = _T(table, alpha, max(nodes//2, 2))
    truncation = float(table.values[-1])
    return IntegralResult('T', alpha, None, 'tensor_quadrature', value,
                          abs(value - coarse) + truncation, nodes=nodes)


def integral_T(table, alpha, nodes=DEFAULT_NODES):
    return integral_T_result(table, alpha, nodes).value


def rect_density(table, a, b, c, d):
    '''(rho(1/d) - rho(1/c))*(rho(1/b) - rho(1/a)): the limiting density of
    {n : n^a <= P+(n) <= n^b, n^c <= P+(n+1) <= n^d}.
    '''

    if not (0 < a < b <= 1 and 0 < c < d <= 1):
        raise DomainError("need 0 < a < b <= 1 and 0 < c < d <= 1, got ({}, {}, {}, {})".format(
                                                                        a, b, c, d))

    def r(v):
        return float(table.rho(1./v))

    return (r(d) - r(c))*(r(b) - r(a))
