#!/usr/bin/env python
from __future__ import absolute_import

import json
import math
import os
import tempfile
import unittest
from unittest import mock

import jsonschema

from multcorr.arith.correlate import chain_windows
from multcorr.dickmann.integrals import integral_T, rect_density
from multcorr.dickmann.rho import default_table
from multcorr.experiments import _experiment_control as ec
from multcorr.experiments import experiments as ex
from multcorr.sieve.segments import harmonic_weight, window_bounds
from multcorr.tests import load_schema
from multcorr.utilities.errors import CapacityError, ConfigError, DomainError, UsageError

LOG2 = math.log(2.)


def _config(x=10**5, **parameters):
    return ex.ExperimentConfig(x=x, parameters=parameters, threads=1)


class TestConfig(unittest.TestCase):

    def test_validation(self):
        self.assertRaises(DomainError, ex.ExperimentConfig, x=50)
        self.assertRaises(DomainError, ex.ExperimentConfig, window='chained')
        self.assertRaises(DomainError, ex.ExperimentConfig, weighting='harmonic')
        self.assertRaises(UsageError, ex.ExperimentConfig, omega='log')
        self.assertRaises(UsageError, ex.ExperimentConfig, parameters={'z': 1.})

    def test_with_parameter(self):
        cfg = _config()
        self.assertEqual(cfg.with_parameter('a', '0.5').param('a'), 0.5)
        self.assertEqual(cfg.with_parameter('k', '2').param('k'), 2)
        self.assertEqual(cfg.with_parameter('x', 10**4).x, 10**4)
        self.assertEqual(cfg.parameters, {})
        self.assertRaises(UsageError, cfg.with_parameter, 'z', 1)
        self.assertRaises(UsageError, cfg.with_parameter, 'k', '1.5')

    def test_missing_parameter(self):
        self.assertRaises(DomainError, _config().param, 'a')
        self.assertEqual(_config().param('offset', 1), 1)

    def test_unknown_experiment(self):
        with self.assertRaises(UsageError) as cm:
            ex.get_experiment('erdos_turn')
        self.assertIn('erdos_turan', str(cm.exception))


class TestExperiments(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.table = default_table()

    def test_erdos_pomerance_target(self):
        est = ex.run_experiment('erdos_pomerance', _config(a=0.5, b=0.5), self.table)
        self.assertAlmostEqual(est.target, (1. - LOG2)**2, delta=1e-6)
        self.assertEqual((est.weighting, est.window, est.x), ('logarithmic', 'full', 10**5))
        self.assertAlmostEqual(sum(est.classes.values()), 1., delta=1e-12)
        self.assertEqual(est.classes['both'], est.estimate)

    def test_erdos_pomerance_monotone_in_a(self):
        estimates = [ex.run_experiment('erdos_pomerance', _config(a=a, b=0.5),
                                       self.table).estimate for a in (0.3, 0.5, 0.7)]
        self.assertTrue(all(e1 <= e2 for e1, e2 in zip(estimates, estimates[1:])))

    def test_erdos_turan(self):
        est = ex.run_experiment('erdos_turan', _config(), self.table)
        self.assertEqual(est.target, 0.5)
        self.assertEqual(est.classes['='], 0.)
        self.assertAlmostEqual(est.classes['<'] + est.classes['>'], 1., delta=1e-12)
        self.assertLess(est.abs_error, 0.1)

    def test_erdos_turan_needs_large_x(self):
        self.assertRaises(DomainError, ex.run_experiment, 'erdos_turan', _config(x=5000))
        cfg = ex.ExperimentConfig(x=5000, window='tail', threads=1)
        self.assertEqual(ex.run_experiment('erdos_turan', cfg).window, 'tail')

    def test_omega_joint(self):
        joint, marginals = ex.run_experiment('omega_joint', _config(a=0.5, b=0.5, k=1, l=0),
                                                                            self.table)
        # I(1/2, 1) I(1/2, 0) = log 2 rho(2)
        self.assertAlmostEqual(joint.target, LOG2*(1. - LOG2), delta=1e-6)
        self.assertEqual(marginals.target, joint.target)
        self.assertAlmostEqual(marginals.estimate, marginals.classes['marginal_a'] *
                                                   marginals.classes['marginal_b'])
        self.assertAlmostEqual(sum(joint.classes.values()), 1., delta=1e-12)

    def test_alpha_shift(self):
        est = ex.run_experiment('alpha_shift', _config(alpha=0.), self.table)
        self.assertAlmostEqual(est.target, integral_T(self.table, 0.), delta=1e-9)
        self.assertAlmostEqual(est.estimate, est.classes['inside'])
        self.assertRaises(DomainError, ex.run_experiment, 'alpha_shift', _config(alpha=1.5))

    def test_hildebrand_rect(self):
        params = dict(a=0.25, b=0.5, c=0.25, d=0.5)
        est = ex.run_experiment('hildebrand_rect', _config(**params), self.table)
        self.assertEqual(est.weighting, 'natural')
        self.assertEqual(est.weight, float(10**5 - 1))
        self.assertEqual(est.target, rect_density(self.table, 0.25, 0.5, 0.25, 0.5))
        self.assertRaises(DomainError, ex.run_experiment, 'hildebrand_rect',
                          _config(a=0.25, b=1., c=0.25, d=0.5))

    def test_ordering(self):
        results = ex.run_experiment('ordering', _config(x=10**4, k=3), self.table)
        self.assertEqual(len(results), 7)
        self.assertEqual(results[0][0], (1, 2, 3))
        self.assertEqual(results[-1][0], 'ties')
        self.assertIsNone(results[-1][1].target)
        self.assertAlmostEqual(sum(est.estimate for _, est in results), 1., delta=1e-12)
        for _, est in results[:-1]:
            self.assertAlmostEqual(est.target, 1./6)

    def test_ordering_limits(self):
        self.assertRaises(CapacityError, ex.run_experiment, 'ordering', _config(k=5))
        self.assertRaises(DomainError, ex.run_experiment, 'ordering', _config(k=1))
        self.assertRaises(DomainError, ex.run_experiment, 'ordering', _config(k=2, offset=-1))

    def test_ordering_offset_zero_is_erdos_turan(self):
        turan = ex.run_experiment('erdos_turan', _config(x=10**4))
        ordering = ex.run_experiment('ordering', _config(x=10**4, k=2, offset=0))
        self.assertEqual(ordering[0][1].estimate, turan.estimate)
        self.assertEqual(ordering[0][0], (0, 1))

    def test_truncated_liouville(self):
        result = ex.run_experiment('truncated_liouville', _config(x=10**4, eps=0.5))
        self.assertIsInstance(result, ex.ShiftCorrelation)
        self.assertAlmostEqual(result.y, 100.)
        self.assertLessEqual(abs(result.value), 1.)
        self.assertRaises(DomainError, ex.run_experiment, 'truncated_liouville',
                          _config(x=10**4, eps=1.))

    def test_chained_estimate(self):
        x = 10**5
        cfg = _config(x=x)
        chained = ex.chained_estimate('erdos_turan', cfg, table=self.table)
        full = ex.run_experiment('erdos_turan', cfg, self.table)
        self.assertEqual((chained.window, chained.weighting), ('chained', 'logarithmic'))
        self.assertLess(abs(chained.estimate - full.estimate), 2./math.log(x))

    def test_chained_windows_are_disjoint(self):
        x = 10**5
        with mock.patch.object(ex, 'run_experiment', wraps=ex.run_experiment) as run:
            ex.chained_estimate('erdos_turan', _config(x=x), table=self.table)
        bounds = [c[0][1].bounds for c in run.call_args_list]
        self.assertEqual(len(bounds), len(chain_windows(x, ex.MIN_X)))
        self.assertEqual(bounds[0][1], x + 1)
        for (lo, _), (_, hi) in zip(bounds, bounds[1:]):
            self.assertEqual(hi, lo)

    def test_bounds_override_window(self):
        x = 10**4
        lo, hi = window_bounds(x, math.log(x))
        tail = ex.run_experiment('erdos_turan', ex.ExperimentConfig(x=x, window='tail',
                                                        threads=1), self.table)
        bounded = ex.run_experiment('erdos_turan', ex.ExperimentConfig(x=x, window='tail',
                                        bounds=(lo + 1, hi), threads=1), self.table)
        self.assertAlmostEqual(bounded.weight, harmonic_weight(lo + 1, hi), delta=1e-12)
        self.assertAlmostEqual(tail.weight - bounded.weight, 1./lo, delta=1e-12)
        self.assertRaises(DomainError, ex.ExperimentConfig, x=x, bounds=(10, 10))
        self.assertRaises(DomainError, ex.ExperimentConfig, x=x, bounds=(10, x + 2))
        self.assertRaises(UsageError, ex.chained_estimate, 'truncated_liouville',
                          _config(x=x, eps=0.5))

    def test_sweep(self):
        rows = ex.sweep('erdos_pomerance', _config(x=10**4, b=0.5), 'a', [0.3, 0.5],
                                                                            self.table)
        self.assertEqual([r[0] for r in rows], [0.3, 0.5])
        for value, estimate, target, abs_error in rows:
            self.assertAlmostEqual(abs_error, abs(estimate - target))

    def test_sweep_of_correlation(self):
        rows = ex.sweep('truncated_liouville', _config(x=10**4), 'eps', [0.5])
        self.assertEqual(rows[0][2:], (None, None))


class TestRender(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.table = default_table()
        cls.estimate =ex.run_experiment('erdos_turan', _config(x=10**4))

    def test_json(self):
        doc = json.loads(ec.render(self.estimate, 'json'))
        jsonschema.validate(doc, load_schema('density_estimate.json'))
        self.assertEqual(doc['label'], 'erdos_turan')

    def test_several_estimates(self):
        result = ex.run_experiment('ordering', _config(x=10**4, k=2))
        doc = json.loads(ec.render(result, 'json', 'ordering'))
        jsonschema.validate(doc, load_schema('experiment_estimates.json'))
        self.assertEqual(len(doc['estimates']), 3)

    def test_shift_correlation(self):
        result = ex.run_experiment('truncated_liouville', _config(x=10**4, eps=0.5))
        jsonschema.validate(json.loads(ec.render(result, 'json')),
                            load_schema('shift_correlation.json'))
        lines = ec.render(result, 'csv').split('\n')
        self.assertEqual(lines[0], 'label,x,window,epsilon,y,value')
        self.assertEqual(len(lines), 2)

    def test_csv_and_human(self):
        lines = ec.render(self.estimate, 'csv').split('\n')
        self.assertEqual(lines[0].split(',')[:2], ['label', 'x'])
        self.assertTrue(lines[1].startswith('erdos_turan,10000,'))
        human = ec.render(self.estimate, 'human')
        self.assertIn('label: erdos_turan', human.split('\n'))

    def test_bad_format(self):
        self.assertRaises(UsageError, ec.render, self.estimate, 'xml')

    def test_chained_windows_are_disjoint(self):
        x = 10**5
        with mock.patch.object(ex, 'run_experiment', wraps=ex.run_experiment) as run:
            ex.chained_estimate('erdos_turan', _config(x=x), table=self.table)
        bounds = [c[0][1].bounds for c in run.call_args_list]
        self.assertEqual(len(bounds), len(chain_windows(x, ex.MIN_X)))
        self.assertEqual(bounds[0][1], x + 1)
        for (lo, _), (_, hi) in zip(bounds, bounds[1:]):
            self.assertEqual(hi, lo)

    def test_bounds_override_window(self):
        x = 10**4
        lo, hi = window_bounds(x, math.log(x))
        tail = ex.run_experiment('erdos_turan', ex.ExperimentConfig(x=x, window='tail',
                                                        threads=1), self.table)
        bounded = ex.run_experiment('erdos_turan', ex.ExperimentConfig(x=x, window='tail',
                                        bounds=(lo + 1, hi), threads=1), self.table)
        self.assertAlmostEqual(bounded.weight, harmonic_weight(lo + 1, hi), delta=1e-12)
        self.assertAlmostEqual(tail.weight - bounded.weight, 1./lo, delta=1e-12)
        self.assertRaises(DomainError, ex.ExperimentConfig, x=x, bounds=(10, 10))
        self.assertRaises(DomainError, ex.ExperimentConfig, x=x, bounds=(10, x + 2))
        self.assertRaises(UsageError, ex.chained_estimate, 'truncated_liouville',
                          _config(x=x, eps=0.5))

    def test_sweep(self):
        rows = [(0.5, 0.1, 0.2, 0.1), (0.6, 0.2, None, None)]
        doc = json.loads(ec.render_sweep('erdos_pomerance', 'a', rows, 'json'))
        jsonschema.validate(doc, load_schema('sweep_result.json'))
        csv = ec.render_sweep('erdos_pomerance', 'a', rows).split('\n')
        self.assertEqual(csv, ['param,estimate,target,abs_error', '0.5,0.1,0.2,0.1',
                               '0.6,0.2,,'])


class TestControlFile(unittest.TestCase):

    def setUp(self):
        self.dir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.dir.cleanup()

    def write(self, text):
        filename = os.path.join(self.dir.name, 'control.txt')
        with open(filename, 'w') as f:
            f.write(text)
        return filename

    def test_load_config(self):
        filename = self.write('# smoothness at 1/2\nx = 1e4\na = 0.5\nb = 0.5\n'
                              'window = tail\nomega = const:2  # short window\n')
        cfg = ec.load_config(filename)
        self.assertEqual((cfg.x, cfg.window, cfg.omega), (10**4, 'tail', 'const:2'))
        self.assertEqual(cfg.parameters, {'a': 0.5, 'b': 0.5})
        self.assertIsNone(cfg.weighting)
        self.assertIsNone(cfg.threads)

    def test_overrides_win(self):
        filename = self.write('x = 1e4\na = 0.5\n')
        cfg = ec.load_config(filename, {'x': '20000', 'a': None})
        self.assertEqual((cfg.x, cfg.param('a')), (20000, 0.5))

    def test_defaults(self):
        cfg = ec.load_config()
        self.assertEqual((cfg.x, cfg.omega, cfg.window), (10**6, 'logx', 'full'))

    def test_errors(self):
        with self.assertRaises(ConfigError) as cm:
            ec.load_config(self.write('x = 1e4\n\nfoo = 1\n'))
        self.assertEqual(cm.exception.lineno, 3)

        with self.assertRaises(ConfigError) as cm:
            ec.load_config(self.write('x = 1e4\nx = 1e5\n'))
        self.assertEqual(cm.exception.lineno, 2)

        with self.assertRaises(ConfigError) as cm:
            ec.load_config(self.write('x = lots\n'))
        self.assertEqual(cm.exception.lineno, 1)

        self.assertRaises(ConfigError, ec.ExperimentSim, self.write('x = 1e4\n'))
        self.assertRaises(ConfigError, ec.ExperimentSim,
                          self.write('experiment = erdos_turn\nx = 1e4\n'))

    def test_sim(self):
        output = os.path.join(self.dir.name, 'out.json')
        filename = self.write('experiment = erdos_turan\nx = 1e4\nthreads = 1\n'
                              'output = {}\n'.format(output))
        sim = ec.ExperimentSim(filename)
        self.assertEqual(sim.control('experiment'), 'erdos_turan')
        with open(output) as f:
            self.assertEqual(f.read(), sim.text + '\n')
        self.assertEqual(json.loads(sim.text)['x'], 10**4)

    def test_sim_sweep(self):
        filename = self.write('experiment = erdos_pomerance\nx = 1e4\nb = 0.5\n'
                              'threads = 1\nsweep = a=0.3:0.5:0.1\nformat = csv\n')
        sim = ec.ExperimentSim(filename)
        self.assertEqual(sim.param, 'a')
        self.assertEqual([r[0] for r in sim.result], [0.3, 0.4, 0.5])
        self.assertEqual(len(sim.text.split('\n')), 4)


if __name__ == '__main__':
    unittest.main()
