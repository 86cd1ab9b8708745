import os
import pandas as pd
from testfixtures import TempDirectory
import unittest
from unittest.mock import patch
import yaml

import qr_diode.cli.diode_script as diode_script
import qr_diode.runner.sweep as sweep
import qr_diode.utils.aux_utils as aux_utils
from qr_diode.observables.heat_currents import HeatCurrents
from qr_diode.utils.errors import NotConverged


class TestDiodeScript(unittest.TestCase):

    def setUp(self):
        """
        Write a small config and set the output directory
        """
        self.tempdir = TempDirectory()
        self.temp_path = self.tempdir.path
        self.out_dir = os.path.join(self.temp_path, 'out')
        self.config = {
            'verbose': 20,
            'model': {'g': 0.15, 'theta': 0.5, 'n_fock': 4},
            'baths': {'gamma': 1e-4, 'T_L': 0.1, 'T_R': 0.5},
            'sweep': {'t_range': [0.1, 0.3, 2], 'thetas': [0.]},
        }
        self.config_path = self.write_config(self.config)

    def tearDown(self):
        # release the log file handler
        aux_utils.init_logger(diode_script.LOGGER_NAME)
        TempDirectory.cleanup_all()
        self.assertFalse(os.path.isdir(self.temp_path))

    def write_config(self, config, fname='config.yml'):
        config_path = os.path.join(self.temp_path, fname)
        with open(config_path, 'w') as f:
            yaml.safe_dump(config, f)
        return config_path

    def read_manifest(self):
        return aux_utils.read_json(
            os.path.join(self.out_dir, diode_script.MANIFEST_FNAME))

    def test_parse_args(self):
        with patch('argparse._sys.argv',
                   ['python', 'steady', '--config', self.config_path]):
            parsed_args = diode_script.parse_args()
            self.assertEqual(parsed_args.command, 'steady')
            self.assertEqual(parsed_args.config, self.config_path)
            self.assertIsNone(parsed_args.out)

    def test_parse_args_sweep(self):
        parsed_args = diode_script.parse_args(
            ['sweep', '--config', 'c.yml', '--param', 'T_L',
             '--range', '0.05:1:20'])
        self.assertEqual(parsed_args.param, 'T_L')
        self.assertEqual(parsed_args.range, '0.05:1:20')
        self.assertIsNone(parsed_args.values)

    def test_parse_args_errors(self):
        bad_argvs = [
            ['steady'],
            ['sweep', '--config', 'c.yml', '--param', 'gamma',
             '--values', '1,2'],
            ['sweep', '--config', 'c.yml', '--param', 'g', '--range',
             '0:1:2', '--values', '1,2'],
            ['figure', '--id', 'fig1', '--out', 'out'],
            ['compare-models'],
        ]
        for argv in bad_argvs:
            with self.subTest(argv=argv):
                with self.assertRaises(SystemExit):
                    diode_script.parse_args(argv)

    def test_steady(self):
        exit_code = diode_script.main(
            ['steady', '--config', self.config_path, '--out', self.out_dir])
        self.assertEqual(exit_code, diode_script.EXIT_OK)
        frame = pd.read_csv(os.path.join(self.out_dir, 'steady.csv'))
        self.assertListEqual(list(frame.columns), sweep.CSV_COLUMNS)
        self.assertEqual(frame.shape[0], 1)
        self.assertGreater(frame['q_f'][0], 0)
        self.assertLess(frame['q_r'][0], 0)
        ledger = pd.read_csv(os.path.join(self.out_dir, 'steady_ledger.csv'))
        self.assertAlmostEqual(
            ledger[ledger['bath'] == 'R']['energy_flux_contribution'].sum(),
            frame['q_f'][0],
            places=14,
        )
        manifest = self.read_manifest()
        self.assertEqual(manifest['command'], 'steady')
        self.assertEqual(manifest['exit_code'], 0)
        self.assertListEqual(manifest['outputs'],
                             ['steady.csv', 'steady_ledger.csv'])
        self.assertEqual(manifest['config']['model']['g'], 0.15)
        self.assertIn('numpy', manifest['versions'])
        self.assertTrue(os.path.exists(
            os.path.join(self.out_dir, diode_script.LOG_FNAME)))

    def test_steady_failed_point(self):
        with patch('qr_diode.cli.diode_script.forward_reverse',
                   side_effect=NotConverged('stalled')):
            exit_code = diode_script.main(
                ['steady', '--config', self.config_path, '--out',
                 self.out_dir])
        self.assertEqual(exit_code, diode_script.EXIT_PARTIAL)
        frame = pd.read_csv(os.path.join(self.out_dir, 'steady.csv'))
        self.assertEqual(frame['error'][0], 'NotConverged: stalled')
        self.assertEqual(self.read_manifest()['exit_code'], 1)

    def test_steady_truncation_dependent(self):
        self.config['model']['g'] = 0.45
        config_path = self.write_config(self.config, 'ultrastrong.yml')
        exit_code = diode_script.main(
            ['steady', '--config', config_path, '--out', self.out_dir])
        self.assertEqual(exit_code, diode_script.EXIT_PARTIAL)
        frame = pd.read_csv(os.path.join(self.out_dir, 'steady.csv'))
        self.assertIn('TruncationDependent', frame['error'][0])
        self.assertEqual(self.read_manifest()['exit_code'], 1)

    def test_steady_non_conserved(self):
        broken = HeatCurrents(q_L=-1e-6, q_R=2e-6)
        with patch('qr_diode.observables.rectification.'
                   'heat_current_rate_form', return_value=broken):
            exit_code = diode_script.main(
                ['steady', '--config', self.config_path, '--out',
                 self.out_dir])
        self.assertEqual(exit_code, diode_script.EXIT_PARTIAL)
        frame = pd.read_csv(os.path.join(self.out_dir, 'steady.csv'))
        self.assertTrue(frame['error'][0].startswith('NonConserved'))

    def test_invalid_config(self):
        self.config['model']['g'] = 0.6
        config_path = self.write_config(self.config, 'collapse.yml')
        exit_code = diode_script.main(
            ['steady', '--config', config_path, '--out', self.out_dir])
        self.assertEqual(exit_code, diode_script.EXIT_INVALID)
        self.assertFalse(os.path.exists(
            os.path.join(self.out_dir, 'steady.csv')))

    def test_unknown_config_key(self):
        config_path = self.write_config({'baths': {'T_C': 0.1}}, 'bad.yml')
        exit_code = diode_script.main(
            ['steady', '--config', config_path, '--out', self.out_dir])
        self.assertEqual(exit_code, diode_script.EXIT_INVALID)

    def test_sweep(self):
        exit_code = diode_script.main(
            ['sweep', '--config', self.config_path, '--param', 'T_L',
             '--range', '0.1:0.3:3', '--out', self.out_dir])
        self.assertEqual(exit_code, diode_script.EXIT_OK)
        frame = pd.read_csv(os.path.join(self.out_dir, 'sweep_T_L.csv'))
        self.assertEqual(frame.shape[0], 3)
        self.assertListEqual(self.read_manifest()['outputs'],
                             ['sweep_T_L.csv'])

    def test_sweep_values_not_increasing(self):
        exit_code = diode_script.main(
            ['sweep', '--config', self.config_path, '--param', 'g',
             '--values', '0.3,0.1', '--out', self.out_dir])
        self.assertEqual(exit_code, diode_script.EXIT_INVALID)
        self.assertEqual(self.read_manifest()['exit_code'], 2)

    def test_figure(self):
        exit_code = diode_script.main(
            ['figure', '--id', 'fig2', '--out', self.out_dir, '--config',
             self.config_path])
        self.assertEqual(exit_code, diode_script.EXIT_OK)
        outputs = self.read_manifest()['outputs']
        self.assertListEqual(
            outputs, ['fig2{}.csv'.format(letter) for letter in 'abcdef'])

    def test_figure_with_ultrastrong_curves(self):
        exit_code = diode_script.main(
            ['figure', '--id', 'fig5', '--out', self.out_dir, '--config',
             self.config_path])
        self.assertEqual(exit_code, diode_script.EXIT_PARTIAL)
        outputs = self.read_manifest()['outputs']
        self.assertListEqual(
            outputs, ['fig5{}.csv'.format(letter) for letter in 'abcdef'])
        frame = pd.read_csv(os.path.join(self.out_dir, 'fig5a.csv'))
        errors = frame['error'].fillna('')
        g_values = frame['curve'].str.split('=').str[1].astype(float)
        flagged = errors.str.contains('TruncationDependent')
        self.assertListEqual(list(flagged), list(g_values >= 0.25))
        self.assertTrue(flagged.any())

    def test_convergence(self):
        self.config['model']['g'] = 0.
        config_path = self.write_config(self.config, 'uncoupled.yml')
        exit_code = diode_script.main(
            ['convergence', '--config', config_path, '--n-list', '2,4',
             '--out', self.out_dir])
        self.assertEqual(exit_code, diode_script.EXIT_OK)
        frame = pd.read_csv(os.path.join(self.out_dir, 'convergence.csv'))
        self.assertListEqual(list(frame['N']), [2, 4])

    def test_convergence_bad_list(self):
        for n_list in ('2,x', '4,2', '1,4'):
            with self.subTest(n_list=n_list):
                exit_code = diode_script.main(
                    ['convergence', '--config', self.config_path,
                     '--n-list', n_list, '--out', self.out_dir])
                self.assertEqual(exit_code, diode_script.EXIT_INVALID)

    def test_output_directory_from_config(self):
        self.config['output'] = {'directory': self.out_dir}
        config_path = self.write_config(self.config, 'out.yml')
        exit_code = diode_script.main(['steady', '--config', config_path])
        self.assertEqual(exit_code, diode_script.EXIT_OK)
        self.assertTrue(os.path.exists(
            os.path.join(self.out_dir, 'steady.csv')))
