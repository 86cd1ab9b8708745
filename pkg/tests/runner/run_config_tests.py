import math
import os
from testfixtures import TempDirectory
import unittest
from unittest.mock import patch

from qr_diode.models.rabi import RabiParams
from qr_diode.models.two_qubit import TwoQubitParams
import qr_diode.runner.run_config as run_config
from qr_diode.utils.errors import (
    ConfigError,
    DomainError,
    SpectralCollapse,
    TruncationTooSmall,
)


class TestRunConfig(unittest.TestCase):

    def test_defaults(self):
        config = run_config.RunConfig.from_dict()
        self.assertEqual(config.verbose, 20)
        self.assertIsNone(config.num_workers)
        self.assertEqual(config.model['kind'], 'rabi')
        self.assertEqual(config.baths['gamma'], 1e-4)
        self.assertEqual(config.baths['T_L'], 0.1)
        self.assertEqual(config.baths['T_R'], 0.5)
        params = config.model_params()
        self.assertIsInstance(params, RabiParams)
        self.assertEqual(params.omega_L, 1.)
        self.assertEqual(params.omega_R, 0.1)
        self.assertEqual(params.g, 0.015)
        self.assertEqual(params.n_fock, 20)
        bath_l, bath_r = config.bath_specs()
        self.assertEqual((bath_l.label, bath_r.label), ('L', 'R'))

    def test_round_trip(self):
        config = run_config.RunConfig.from_dict({
            'verbose': 10,
            'model': {'g': 0.2, 'theta': 0.5, 'n_fock': 6},
            'numerics': {'oracle': True},
        })
        self.assertEqual(run_config.RunConfig.from_dict(config.to_dict()),
                         config)
        self.assertEqual(config.model['omega_R'], 0.1)
        self.assertEqual(config.model_params().n_fock, 6)

    def test_unknown_keys(self):
        with self.assertRaises(ConfigError):
            run_config.RunConfig.from_dict({'modle': {}})
        with self.assertRaises(ConfigError):
            run_config.RunConfig.from_dict({'model': {'coupling': 0.1}})
        with self.assertRaises(ConfigError):
            run_config.RunConfig.from_dict({'baths': [0.1, 0.5]})

    def test_model_validation(self):
        with self.assertRaises(SpectralCollapse):
            run_config.RunConfig.from_dict({'model': {'g': 0.6}})
        with self.assertRaises(TruncationTooSmall):
            run_config.RunConfig.from_dict({'model': {'n_fock': 1}})
        with self.assertRaises(ConfigError):
            run_config.RunConfig.from_dict({'model': {'n_fock': 'ten'}})
        with self.assertRaises(ConfigError):
            run_config.RunConfig.from_dict({'model': {'kind': 'jc'}})
        with self.assertRaises(DomainError):
            run_config.RunConfig.from_dict({'model': {'theta': 2.}})

    def test_bath_validation(self):
        with self.assertRaises(ConfigError):
            run_config.RunConfig.from_dict({'baths': {'T_L': -0.1}})
        with self.assertRaises(ConfigError):
            run_config.RunConfig.from_dict({'baths': {'gamma': 'small'}})

    def test_numerics_output_sweep_validation(self):
        bad_configs = [
            {'numerics': {'oracle': 'yes'}},
            {'numerics': {'rk4_dt': 0.}},
            {'output': {'precision': 0}},
            {'sweep': {'t_range': [0.5, 0.1, 10]}},
            {'sweep': {'g_range': [0.01, 0.2, 1]}},
            {'sweep': {'thetas': []}},
            {'num_workers': 0},
            {'verbose': 'loud'},
        ]
        for config_dict in bad_configs:
            with self.subTest(config=config_dict):
                with self.assertRaises(ConfigError):
                    run_config.RunConfig.from_dict(config_dict)

    def test_flux_parameters(self):
        config = run_config.RunConfig.from_dict(
            {'model': {'epsilon': 1., 'q': 1., 'n_fock': 4}})
        params = config.model_params()
        self.assertAlmostEqual(params.omega_R, math.sqrt(2.), places=14)
        self.assertAlmostEqual(params.theta, math.pi / 4, places=14)
        self.assertTrue(config.uses_flux)
        with self.assertRaises(ConfigError):
            run_config.RunConfig.from_dict({'model': {'epsilon': 1.}})
        with self.assertRaises(ConfigError):
            run_config.RunConfig.from_dict(
                {'model': {'kind': 'dm', 'epsilon': 1., 'q': 1.}})

    def test_two_qubit(self):
        config = run_config.RunConfig.from_dict(
            {'model': {'kind': 'asymmetric_zx', 'omega_R': 0.5, 'g': 0.1}})
        params = config.model_params()
        self.assertIsInstance(params, TwoQubitParams)
        self.assertEqual(params.kind, 'asymmetric_zx')

    def test_updated(self):
        config = run_config.RunConfig.from_dict({'model': {'n_fock': 4}})
        changed = config.updated(model={'g': 0.3}, baths={'T_L': 0.2})
        self.assertEqual(changed.model['g'], 0.3)
        self.assertEqual(changed.baths['T_L'], 0.2)
        self.assertEqual(config.model['g'], 0.015)
        self.assertEqual(config.baths['T_L'], 0.1)
        with self.assertRaises(ConfigError):
            config.updated(model={'G': 0.3})
        with self.assertRaises(SpectralCollapse):
            config.updated(model={'g': 0.5})

    def test_numerics_options(self):
        config = run_config.RunConfig.from_dict(
            {'numerics': {'oracle': True, 'deg_tol': 1e-9}})
        options = config.numerics_options()
        self.assertTrue(options.oracle)
        self.assertEqual(options.deg_tol, 1e-9)
        self.assertIsNone(options.rk4_dt)

    def test_worker_count(self):
        config = run_config.RunConfig.from_dict({'num_workers': 6})
        with patch.dict(os.environ, {'QRDIODE_THREADS': '2'}):
            self.assertEqual(config.worker_count(), 2)
        with patch.dict(os.environ, {'QRDIODE_THREADS': '8'}):
            self.assertEqual(config.worker_count(), 6)

    def test_from_file(self):
        with TempDirectory() as tempdir:
            tempdir.write(
                'config.yml',
                b"verbose: 10\n"
                b"model:\n"
                b"    g: 0.45\n"
                b"    n_fock: 'auto'\n"
                b"baths:\n"
                b"    gamma: 1.0e-4\n"
                b"    T_L: 0.05\n",
            )
            config = run_config.RunConfig.from_file(
                os.path.join(tempdir.path, 'config.yml'))
        self.assertEqual(config.verbose, 10)
        self.assertEqual(config.baths['T_L'], 0.05)
        self.assertEqual(config.model_params().n_fock, 40)

    def test_shipped_configs(self):
        config_dir = os.path.join(
            os.path.dirname(run_config.__file__), os.pardir)
        for fname in ('config_default.yml', 'config_flux_qubit.yml',
                      'config_oracle.yml'):
            with self.subTest(fname=fname):
                config = run_config.RunConfig.from_file(
                    os.path.join(config_dir, fname))
                config.model_params()
