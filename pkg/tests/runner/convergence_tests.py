import unittest

import qr_diode.runner.convergence as convergence
from qr_diode.runner.run_config import RunConfig
from qr_diode.utils.errors import ConfigError, TruncationTooSmall


class TestConvergence(unittest.TestCase):

    def test_relative_change(self):
        self.assertEqual(convergence.relative_change(1e-17, -1e-17), 0.)
        self.assertAlmostEqual(convergence.relative_change(2e-6, 1e-6), 0.5)
        self.assertEqual(convergence.relative_change(1e-6, 1e-6), 0.)

    def test_check_ladder(self):
        with self.assertRaises(ConfigError):
            convergence.check_ladder([5])
        with self.assertRaises(ConfigError):
            convergence.check_ladder([5, 2])
        with self.assertRaises(ConfigError):
            convergence.check_ladder([2, 2, 4])
        with self.assertRaises(TruncationTooSmall):
            convergence.check_ladder([1, 4])
        convergence.check_ladder([2, 5, 10])

    def test_auto_ladder(self):
        self.assertEqual(convergence.AUTO_LADDER[0], 2)
        self.assertEqual(convergence.AUTO_LADDER[-1], convergence.MAX_N_FOCK)

    def test_two_qubit_rejected(self):
        config = RunConfig.from_dict({'model': {'kind': 'ising_zz'}})
        with self.assertRaises(ConfigError):
            convergence.convergence_check(config, [2, 4])

    def test_uncoupled(self):
        config = RunConfig.from_dict({'model': {'g': 0.}})
        result = convergence.convergence_check(config, [2, 4, 6])
        self.assertEqual(result.converged_at, 2)
        self.assertTrue(result.converged)
        self.assertIsNone(result.error)
        table = result.table
        self.assertListEqual(list(table.columns),
                             convergence.CONVERGENCE_COLUMNS)
        self.assertListEqual(list(table['N']), [2, 4, 6])
        self.assertIsNone(result.rows[0]['relative_change'])
        self.assertTrue(result.rows[2]['converged'])

    def test_auto_mode_stops(self):
        config = RunConfig.from_dict({'model': {'g': 0.}})
        result = convergence.convergence_check(config)
        # 2 and 5 agree, nothing else is evaluated
        self.assertEqual(result.converged_at, 2)
        self.assertEqual(len(result.rows), 2)

    def test_weak_coupling(self):
        config = RunConfig.from_dict({})
        result = convergence.convergence_check(config, [2, 5, 10, 20])
        self.assertTrue(result.converged)
        self.assertLessEqual(result.converged_at, 10)
        for row in result.rows:
            self.assertGreater(row['q_R'], 0)
            self.assertAlmostEqual(row['q_L'], -row['q_R'], places=15)

    def test_smallest_cutoff_at_low_temperature(self):
        for omega_R in (0.1, 2.):
            for t_l in (0.1, 0.2, 0.3):
                config = RunConfig.from_dict({
                    'model': {'g': 0.015, 'omega_R': omega_R},
                    'baths': {'T_L': t_l, 'T_R': 0.5},
                })
                with self.subTest(omega_R=omega_R, T_L=t_l):
                    result = convergence.convergence_check(config, [2, 20])
                    self.assertLessEqual(
                        result.rows[1]['relative_change'], 0.05)

    def test_strong_coupling_needs_more(self):
        weak = convergence.convergence_check(RunConfig.from_dict({}),
                                             [2, 5, 10])
        strong = convergence.convergence_check(
            RunConfig.from_dict({'model': {'g': 0.45}}), [2, 5, 10])
        self.assertTrue(strong.converged_at is None
                        or strong.converged_at > weak.converged_at)
        if strong.converged_at is None:
            self.assertTrue(strong.error.startswith('NotConverged'))
