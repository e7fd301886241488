#!/usr/bin/env python
from __future__ import absolute_import

import unittest

import numpy as np
import numpy.testing as npt

from multcorr.arith import charsum as cs
from multcorr.sieve.factor_sieve import primes_up_to
from multcorr.utilities.errors import DomainError, ValidationError


def _euler(n, p):
    r = pow(int(n), (p - 1)//2, p)
    return -1 if r == p - 1 else r


class TestJacobi(unittest.TestCase):

    def test_examples(self):
        self.assertEqual(cs.jacobi(2, 5), -1)
        self.assertEqual(cs.jacobi(0, 5), 0)
        self.assertEqual(cs.jacobi(2, 15), 1)
        self.assertEqual(cs.jacobi(5, 1), 1)
        self.assertEqual(cs.jacobi(-1, 7), -1)

    def test_even_modulus(self):
        self.assertRaises(DomainError, cs.jacobi, 3, 10)
        self.assertRaises(DomainError, cs.jacobi_array, [3], 10)
        self.assertRaises(DomainError, cs.jacobi, 3, 0)

    def test_euler_criterion(self):
        for p in primes_up_to(1000)[1:]:
            p = int(p)
            n = np.arange(p)
            expected = [_euler(r, p) for r in range(p)]
            npt.assert_array_equal(cs.jacobi_array(n, p, 'binary'), expected, err_msg=str(p))
            npt.assert_array_equal(cs.jacobi_array(n, p, 'table'), expected, err_msg=str(p))

    def test_periodic_and_completely_multiplicative(self):
        for Q in range(1, 200, 2):
            r = np.arange(Q)
            table = cs.jacobi_array(r, Q, 'binary')
            npt.assert_array_equal(cs.jacobi_array(r + Q, Q, 'binary'), table)
            npt.assert_array_equal(cs.jacobi_array(r, Q, 'table') if Q > 1 else table, table)

            products = np.outer(r, r)
            npt.assert_array_equal(cs.jacobi_array(products, Q, 'binary'),
                                   np.outer(table, table), err_msg=str(Q))

    def test_scalar_matches_array(self):
        n = np.arange(-50, 500)
        for Q in (3, 15, 21, 105, 1000003):
            npt.assert_array_equal(cs.jacobi_array(n, Q, 'binary'),
                                   [cs.jacobi(int(v), Q) for v in n])

    def test_zero_iff_shared_factor(self):
        n = np.arange(1, 106)
        chi = cs.jacobi_array(n, 105)
        npt.assert_array_equal(chi == 0, np.gcd(n, 105) > 1)

    def test_bad_kernel(self):
        self.assertRaises(ValueError, cs.jacobi_array, [1], 5, 'fast')


class TestModulus(unittest.TestCase):

    def test_factorization(self):
        self.assertEqual(cs.factor_modulus(15).prime_factors, (3, 5))
        self.assertEqual(cs.factor_modulus(1000003).prime_factors, (1000003,))
        self.assertEqual(cs.factor_modulus(1000003*1000033).prime_factors, (1000003, 1000033))

    def test_errors(self):
        with self.assertRaises(ValidationError) as cm:
            cs.factor_modulus(9)
        self.assertIn('3^2', str(cm.exception))
        self.assertRaises(DomainError, cs.factor_modulus, 14)
        self.assertRaises(DomainError, cs.factor_modulus, 1)

    def test_primality(self):
        primes = set(int(p) for p in primes_up_to(2000))
        for n in range(2000):
            self.assertEqual(cs.is_probable_prime(n), n in primes, msg=str(n))
        # Carmichael numbers
        for n in (561, 41041, 825265):
            self.assertFalse(cs.is_probable_prime(n))

    def test_euler_product(self):
        self.assertAlmostEqual(cs.euler_product_factor(cs.factor_modulus(15)), 0.2)
        self.assertAlmostEqual(cs.euler_product_factor(cs.factor_modulus(5)), 0.6)
        self.assertAlmostEqual(cs.euler_product_factor(cs.factor_modulus(3)), 1./3)


class TestPeriodicQuantities(unittest.TestCase):

    def test_periodic_mean(self):
        for Q in (3, 5, 7, 15, 21, 105):
            mod = cs.factor_modulus(Q)
            chi = cs.jacobi_array(np.arange(Q), Q)
            for h in (1, 2, 3, 5, 7, -1):
                shifted = cs.jacobi_array(np.arange(Q) + h, Q)
                expected = np.sum(chi*shifted.astype(np.int64))/float(Q)
                self.assertAlmostEqual(cs.periodic_mean(mod, h), expected, places=12,
                                       msg='Q = {}, h = {}'.format(Q, h))

    def test_pair_density(self):
        for Q in (3, 5, 7, 11, 13, 15, 21, 35, 105):
            r = np.arange(Q)
            both = (cs.jacobi_array(r, Q) == -1) & (cs.jacobi_array(r + 1, Q) == -1)
            self.assertAlmostEqual(cs.periodic_pair_density(cs.factor_modulus(Q)),
                                   np.count_nonzero(both)/float(Q), places=12, msg=str(Q))

    def test_known_values(self):
        self.assertEqual(cs.periodic_mean(cs.factor_modulus(5), 1), -0.2)
        self.assertAlmostEqual(cs.periodic_pair_density(cs.factor_modulus(5)), 0.2)
        self.assertAlmostEqual(cs.periodic_pair_density(cs.factor_modulus(15)), 1./15)
        self.assertEqual(cs.periodic_pair_density(cs.factor_modulus(3)), 0.)


class TestBurgess(unittest.TestCase):

    def test_fixed_small_modulus(self):
        report = cs.burgess_report(5, 1, 10**6, nprocesses=1)
        self.assertAlmostEqual(report.value, report.periodic_mean, delta=1e-3)
        self.assertTrue(report.in_regime)

    def test_large_prime_modulus(self):
        self.assertLess(abs(cs.burgess_corr(10**6 + 3, 1, 10**6, nprocesses=1)), 0.1)

    def test_shift_divisible_by_modulus(self):
        # chi_3(n)chi_3(n + 3) = chi_3(n)^2
        value = cs.burgess_corr(3, 3, 10**5, nprocesses=1)
        self.assertAlmostEqual(value, 2./3, delta=0.05)

    def test_kernels_agree(self):
        table = cs.burgess_report(105, 2, 10**4, kernel='table', nprocesses=1)
        binary = cs.burgess_report(105, 2, 10**4, kernel='binary', nprocesses=1)
        self.assertEqual(table.value, binary.value)

    def test_negative_shift(self):
        value = cs.burgess_corr(7, -1, 10**4, omega='const:2', nprocesses=1)
        self.assertLessEqual(abs(value), 1./np.log(2.))

    def test_outside_regime_is_flagged(self):
        with self.assertLogs('multcorr.arith.charsum', level='WARNING'):
            report = cs.burgess_report(2**61 - 1, 1, 1000, nprocesses=1)
        self.assertFalse(report.in_regime)

    def test_domain(self):
        self.assertRaises(DomainError, cs.burgess_corr, 5, 0, 10**4)
        self.assertRaises(ValidationError, cs.burgess_corr, 45, 1, 10**4)


class TestQnrPairs(unittest.TestCase):

    def test_densities(self):
        x = 10**6
        for Q in (5, 15, 105):
            report = cs.qnr_pair_densities(Q, x, nprocesses=1)
            self.assertAlmostEqual(report.natural_density, report.periodic_density,
                                   delta=Q/float(x))
            self.assertAlmostEqual(report.log_density, report.periodic_density, delta=0.02)
            self.assertGreaterEqual(report.natural_density, 0.5*report.target)
            self.assertAlmostEqual(report.target, cs.euler_product_factor(
                                                        cs.factor_modulus(Q))/4.)

    def test_tail_window(self):
        report = cs.qnr_pair_densities(5, 10**5, omega='logx', nprocesses=1)
        self.assertAlmostEqual(report.tail_log_density, 0.2, delta=1e-3)
        self.assertAlmostEqual(report.omega, np.log(10**5))

    def test_small_x(self):
        # n = 2 is the only n <= 5 with (n|5) = (n+1|5) = -1
        report = cs.qnr_pair_densities(5, 5, nprocesses=1)
        self.assertAlmostEqual(report.natural_density, 0.2)
        self.assertAlmostEqual(report.log_density, 0.5/sum(1./n for n in range(1, 6)))

    def test_sign_cells(self):
        cells = cs.sign_pair_cells(15, 15*1000, nprocesses=1)
        total = sum(cells[c] for c in ('++', '+-', '-+', '--'))
        self.assertAlmostEqual(total, cells['coprime'])
        self.assertAlmostEqual(cells['--'], 1./15)
        self.assertAlmostEqual(cells['coprime'], 3./15)

    def test_sign_cells_partition(self):
        cells = cs.sign_pair_cells(5, 10**6, nprocesses=1)
        total = sum(cells[c] for c in ('++', '+-', '-+', '--'))
        self.assertAlmostEqual(total, cells['coprime'], delta=1e-3)
        self.assertAlmostEqual(cells['coprime'], 0.6, delta=1e-3)
        # n = 1, 2, 3 mod 5 land in +-, -- and -+; the squares 1, 4 are never adjacent
        for cell, density in (('++', 0.), ('+-', 0.2), ('-+', 0.2), ('--', 0.2)):
            self.assertAlmostEqual(cells[cell], density, delta=1e-3, msg=cell)

    def test_domain(self):
        self.assertRaises(DomainError, cs.qnr_pair_densities, 5, 1)


if __name__ == '__main__':
    unittest.main()
