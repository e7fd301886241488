#!/usr/bin/env python
from __future__ import absolute_import

import math
import unittest

from scipy.optimize import brentq

from multcorr.arith import correlate as cr
from multcorr.arith.multfunc import constant_one, liouville, smooth_indicator, window_sum
from multcorr.sieve.segments import harmonic_weight, window_bounds
from multcorr.utilities.errors import DomainError


class TestRequest(unittest.TestCase):

    def test_domain(self):
        self.assertRaises(DomainError, cr.CorrelationRequest, liouville(), liouville(), 0, 10**4)
        self.assertRaises(DomainError, cr.CorrelationRequest, liouville(), liouville(), 1, 50)
        self.assertRaises(DomainError, cr.CorrelationRequest, liouville(), liouville(), 1, 10**4,
                                                                                    1.)
        self.assertRaises(DomainError, cr.CorrelationRequest, liouville(), liouville(), 1, 10**4,
                                                                                    100.)

    def test_window_expression(self):
        req = cr.CorrelationRequest(liouville(), liouville(), 1, 10**4, 'log3x')
        self.assertAlmostEqual(req.omega_value, math.log(3*10**4))
        req = cr.CorrelationRequest(liouville(), liouville(), 1, 10**4, 'const:5')
        self.assertEqual(req.omega_value, 5.)

    def test_relative_thresholds_resolve(self):
        req = cr.CorrelationRequest(smooth_indicator(y_power=0.5), liouville(), 1, 10**4)
        g1, g2 = req.resolved()
        self.assertAlmostEqual(g1.y, 100.)
        self.assertEqual(g2, liouville())


class TestCorrelation(unittest.TestCase):

    def test_constant_one(self):
        req = cr.CorrelationRequest(constant_one(), constant_one(), 1, 10**5)
        self.assertAlmostEqual(cr.log_correlation(req, nprocesses=1), 1., delta=1e-3)

    def test_negative_shift(self):
        req = cr.CorrelationRequest(constant_one(), constant_one(), -3, 10**4, 'const:2')
        lo, hi = window_bounds(10**4, 2.)
        expected = harmonic_weight(lo, hi)/math.log(2.)
        self.assertAlmostEqual(cr.log_correlation(req, nprocesses=1), expected, places=12)

    def test_expansion_identity(self):
        req = cr.CorrelationRequest(liouville(), liouville(), 1, 2*10**4)
        report = cr.theorem13_check(req, nprocesses=1)
        self.assertLess(abs(report.expansion_residual()), 1e-10)
        self.assertAlmostEqual(report.discrepancy, abs(report.lhs - report.rhs))
        self.assertAlmostEqual(report.rhs, report.delta1*report.delta2)
        self.assertEqual(report.g1, 'liouville')

    def test_normalized_matches_report(self):
        req = cr.CorrelationRequest(liouville(), smooth_indicator(y=50.), 2, 10**4)
        report = cr.theorem13_check(req, nprocesses=1)
        self.assertAlmostEqual(cr.normalized_correlation(req, nprocesses=1), report.normalized,
                                                                                places=12)

    def test_liouville_pair_small(self):
        req = cr.CorrelationRequest(liouville(), liouville(), 1, 10**5)
        self.assertLess(abs(cr.log_correlation(req, nprocesses=1)), 0.1)

    def test_thread_invariance(self):
        req = cr.CorrelationRequest(liouville(), liouville(), 1, 10**5)
        one = cr.correlation_sums(req, segment_size=8192, nprocesses=1)
        two = cr.correlation_sums(req, segment_size=8192, nprocesses=2)
        self.assertEqual(one, two)

    def test_full_correlation(self):
        x = 10**4
        value = cr.full_log_correlation(constant_one(), constant_one(), 1, x, nprocesses=1)
        self.assertAlmostEqual(value, harmonic_weight(1, x + 1)/math.log(x), places=12)
        self.assertRaises(DomainError, cr.full_log_correlation, liouville(), liouville(), 0, x)
        self.assertRaises(DomainError, cr.full_log_correlation, liouville(), liouville(), 1, 10)


class TestTrendAndChains(unittest.TestCase):

    def test_trend(self):
        trend = cr.discrepancy_trend('liouville', 'liouville', 1, 'logx', [10**3, 10**4],
                                                                        nprocesses=1)
        self.assertEqual([x for x, _ in trend], [10**3, 10**4])
        self.assertTrue(all(d >= 0 for _, d in trend))

    def test_trend_needs_ascending(self):
        self.assertRaises(DomainError, cr.discrepancy_trend, 'liouville', 'liouville', 1,
                                                                'logx', [10**4, 10**3])

    def test_chain(self):
        chain = cr.chain_windows(10**6, 100)
        ys = [y for y, _, _, _ in chain]
        self.assertEqual(ys[0], 10**6)
        self.assertTrue(all(b < a for a, b in zip(ys, ys[1:])))
        self.assertGreaterEqual(ys[-1], 100)
        self.assertLess(ys[-1]/math.log(ys[-1]), 100)
        for y, w, lo, hi in chain:
            self.assertAlmostEqual(w, math.log(math.log(y)))
            self.assertEqual(lo, window_bounds(y, math.log(y))[0])
            self.assertLess(lo, hi)
        self.assertEqual(chain[0][3], 10**6 + 1)
        self.assertRaises(DomainError, cr.chain_windows, 10**6, 50)

    def test_window_additivity(self):
        # weighted window averages of g = 1 telescope to the harmonic sum
        x = 10**6
        chain = cr.chain_windows(x, 100)
        total = 0.
        for y, w, lo, hi in chain:
            req = cr.CorrelationRequest(constant_one(), constant_one(), 1, y, 'logx')
            self.assertEqual((lo, hi), window_bounds(y, math.log(y)))
            total += w*cr.log_correlation(req, nprocesses=1)

        self.assertAlmostEqual(total, harmonic_weight(chain[-1][2], x + 1), delta=1e-9)

    def test_integer_scale_shared_once(self):
        # x/log x = 2000 exactly, so 2000 closes window 1 and would open window 2
        x = brentq(lambda t: t/math.log(t) - 2000., 1e3, 1e6)
        chain = cr.chain_windows(x, 100)
        self.assertAlmostEqual(chain[1][0], 2000., delta=1e-9)
        self.assertEqual(chain[0][2], 2000)
        self.assertEqual(chain[1][3], 2000)

        for (_, _, lo, _), (_, _, _, hi) in zip(chain, chain[1:]):
            self.assertEqual(hi, lo)
        total = sum(window_sum(constant_one(), lo, hi, harmonic=True, nprocesses=1)
                    for _, _, lo, hi in chain)
        self.assertAlmostEqual(total, harmonic_weight(chain[-1][2], int(x) + 1), delta=1e-9)


if __name__ == '__main__':
    unittest.main()
