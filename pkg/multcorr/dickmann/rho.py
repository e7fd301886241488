#!/usr/bin/env python
'''Tabulated Dickman function. rho(u) = 1 on [0, 1] and for u > 1 it is fixed
by the delay identity

    u*rho(u) = int_{u-1}^{u} rho(t) dt,

equivalently u*rho'(u) = -rho(u - 1). The table is advanced one grid point at
a time with the endpoint corrected trapezoid rule for the integral,

    int_a^b f = h*(f_a/2 + f_{a+h} + ... + f_b/2) - h^2/12*(f'(b) - f'(a)) + O(h^4),

where both derivatives come from the delay equation itself (at a = 1 the
right derivative -1 is used, the kink of rho sitting on a grid point). The
identity is linear in the new value, so each step is a closed-form solve

    rho_i = (h*(rho_{i-N}/2 + rho_{i-N+1} + ... + rho_{i-1}) - h^2/12*D_i)/(u_i - h/2),

    D_i = rho(u_i - 2)/(u_i - 1) - rho(u_i - 1)/u_i,

with h the step, N = 1/h and rho(u_i - 2)/(u_i - 1) read as 1 while u_i < 2.
Between grid points the table is read with a monotone cubic (PCHIP)
interpolant. The table is checked against 1 - log(u) on [1, 2] when built,
and <RhoTable.residuals> measures the delay identity on the interpolant
rather than on the stepping rule.
'''
from __future__ import absolute_import

import functools
import logging
import math

import numpy as np
from scipy.interpolate import PchipInterpolator

from multcorr.utilities.errors import DomainError, NumericError

logger = logging.getLogger(__name__)

DEFAULT_STEP = 1e-3
DEFAULT_UMAX = 40.
DEFAULT_TOL = 1e-8


class RhoTable(object):
    '''Values of rho at u = 0, h, 2h, ..., u_max. The arrays are read-only.
    '''

    def __init__(self, step, u_max, values, tol=DEFAULT_TOL):
        self.step = step
        self.u_max = u_max
        self.values = values
        self.tol = tol
        self.n_unit = int(round(1./step))
        self.grid = step*np.arange(len(values))
        self.grid.setflags(write=False)

        # interpolate from u = 1 on; rho is exactly 1 below
        self._interp = PchipInterpolator(self.grid[self.n_unit:], values[self.n_unit:],
                                         extrapolate=False)

    def __repr__(self):
        return 'RhoTable(step={}, u_max={})'.format(self.step, self.u_max)

    def rho(self, u):
        '''Vectorised rho(u): exactly 1 for u <= 1, interpolated on (1, u_max]
        and 0 beyond u_max (see <truncated>).
        '''

        u = np.asarray(u, dtype=np.float64)
        if np.any(u < 0):
            raise DomainError("rho is defined for u >= 0")

        out = np.ones(u.shape)
        inside = (u > 1) & (u <= self.u_max)
        if inside.any():
            out[inside] = self._interp(u[inside])
        out[u > self.u_max] = 0.
        return out if out.ndim else float(out)

    def truncated(self, u):
        return np.asarray(u) > self.u_max

    def u_density(self, x):
        '''Vectorised u(x) = rho(1/x - 1)/x on 0 < x <= 1.
        '''

        x = np.asarray(x, dtype=np.float64)
        if np.any(x <= 0) or np.any(x > 1):
            raise DomainError("u(x) is defined for 0 < x <= 1")

        arg = np.maximum(1./x - 1., 0.)
        out = self.rho(arg)/x
        return out if np.ndim(out) else float(out)

    @property
    def x_min(self):
        '''Below this point 1/x - 1 > u_max and u(x) is truncated to 0.
        '''

        return 1./(1. + self.u_max)

    @property
    def max_slope(self):
        '''Largest |rho(u + h) - rho(u)|/h over the grid; an empirical
        Lipschitz constant for rho.
        '''

        return float(np.max(np.abs(np.diff(self.values)))/self.step)

    def residuals(self):
        '''|u*rho(u) - int_{u-1}^{u} rho| at every grid point u > 1. The
        integral is the exact integral of the interpolant, so the residual
        does not share the quadrature the table was stepped with.
        '''

        N = self.n_unit
        start = self.grid[N]
        antiderivative = self._interp.antiderivative()
        u = self.grid[N + 1:]
        lower = np.maximum(u - 1., start)
        integral = antiderivative(u) - antiderivative(lower) + np.maximum(start - (u - 1.), 0.)
        return np.abs(u*self.values[N + 1:] - integral)

    @functools.cached_property
    def max_residual(self):
        return float(self.residuals().max())


def build_rho(step=DEFAULT_STEP, u_max=DEFAULT_UMAX, tol=DEFAULT_TOL):
    '''Tabulates rho on [0, u_max] with grid spacing <step>. 1/step must be an
    integer so that u = 1, 2, ... are grid points.
    '''

    if not (0 < step <= 0.01):
        raise DomainError("step must lie in (0, 0.01], got {}".format(step))
    if u_max < 2:
        raise DomainError("u_max must be >= 2, got {}".format(u_max))

    N = int(round(1./step))
    if abs(N*step - 1.) > 1e-9:
        raise DomainError("1/step must be an integer, got step = {}".format(step))
    h = 1./N

    M = int(math.ceil(u_max*N - 1e-9))
    values = np.ones(M + 1)

    logger.info("Tabulating rho on [0, %g] with step %g", M*h, h)
    for i in range(N + 1, M + 1):
        u = i*h
        inner = values[i - N + 1:i].sum()
        lower_slope = values[i - 2*N]/(u - 1.) if i >= 2*N else 1.
        D = lower_slope - values[i - N]/u
        value = (h*(0.5*values[i - N] + inner) - h*h/12.*D)/(u - 0.5*h)

        if not (value > 0 and math.isfinite(value)):
            raise NumericError("rho step failed at grid point u = {:.6g} (value {})".format(
                                                                        u, value))
        values[i] = value

    # rho = 1 - log(u) on [1, 2]
    head = h*np.arange(N, 2*N + 1)
    error = float(np.max(np.abs(values[N:2*N + 1] - (1. - np.log(head)))))
    if error > tol:
        raise NumericError("rho table is off 1 - log(u) by {:.3g} on [1, 2], above {:.3g}".format(
                                                                            error, tol))
    logger.debug("rho table error on [1, 2]: %.3g", error)

    values.setflags(write=False)
    return RhoTable(h, M*h, values, tol)


@functools.lru_cache(maxsize=4)
def default_table(step=DEFAULT_STEP, u_max=DEFAULT_UMAX):
    return build_rho(step, u_max)


def rho_at(table, u, with_flag=False):
    '''rho(u) read from <table>. If <with_flag>, returns (value, truncated)
    where <truncated> is True when u > u_max and the value was set to 0.
    '''

    if u < 0:
        raise DomainError("rho is defined for u >= 0, got {}".format(u))

    value = float(table.rho(u))
    if with_flag:
        return value, bool(u > table.u_max)
    return value


def u_density(table, x, with_flag=False):
    '''u(x) = rho(1/x - 1)/x.
    '''

    if not (0 < x <= 1):
        raise DomainError("u(x) is defined for 0 < x <= 1, got {}".format(x))

    value = float(table.u_density(x))
    if with_flag:
        return value, bool(x < table.x_min)
    return value


def rho_closed_form(u):
    '''rho on [0, 2], where it is 1 and 1 - log(u) respectively.
    '''

    if not (0 <= u <= 2):
        raise DomainError("closed form only available on [0, 2], got {}".format(u))
    return 1. if u <= 1 else 1. - math.log(u)


def richardson_rho(u, step=DEFAULT_STEP):
    '''rho(u) from tables with steps h and h/2 combined by Richardson
    extrapolation for a fourth order method. Returns (extrapolated, coarse,
    fine).
    '''

    u_max = max(2., math.ceil(u) + 1.)
    coarse = rho_at(build_rho(step, u_max), u)
    fine = rho_at(build_rho(step/2., u_max), u)
    return (16.*fine - coarse)/15., coarse, fine
