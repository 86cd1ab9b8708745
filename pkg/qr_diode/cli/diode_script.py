#!/usr/bin/env/python
"""
Command line interface: single points, parameter sweeps, figure plot data,
truncation convergence and the model comparison.

Exit codes: 0 success, 1 some points failed or a convergence ladder didn't
converge, 2 invalid config or parameters.
"""
import argparse
from dataclasses import asdict
import logging
import os
import sys

from qr_diode.observables.rectification import (
    PointSolver,
    build_model,
    forward_reverse,
)
from qr_diode.observables.transition_ledger import (
    LEDGER_COLUMNS,
    transition_ledger,
)
import qr_diode.runner.convergence as convergence
import qr_diode.runner.figures as figures
from qr_diode.runner.run_config import RunConfig
import qr_diode.runner.sweep as sweep
import qr_diode.utils.aux_utils as aux_utils
from qr_diode.utils.errors import (
    VALIDATION_ERRORS,
    ConfigError,
    DiodeError,
    describe_error,
)

LOGGER_NAME = 'qr_diode'
LOG_FNAME = 'qr_diode.log'
MANIFEST_FNAME = 'run_manifest.json'
EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_INVALID = 2


def parse_args(argv=None):
    """Parse command line arguments

    :param list/None argv: arguments, None for sys.argv
    :return: namespace containing the arguments passed.
    """
    parser = argparse.ArgumentParser(
        description='Two-photon quantum Rabi thermal diode')
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True

    steady = subparsers.add_parser(
        'steady', help='Forward/reverse run of the configured point')
    steady.add_argument('--config', type=str, required=True,
                        help='path to yaml configuration file')
    steady.add_argument('--out', type=str, default=None,
                        help='output directory, overrides output.directory')

    sweep_parser = subparsers.add_parser(
        'sweep', help='Sweep one parameter of the configured point')
    sweep_parser.add_argument('--config', type=str, required=True,
                              help='path to yaml configuration file')
    sweep_parser.add_argument(
        '--param',
        type=str,
        required=True,
        choices=sweep.SWEEP_PARAMS,
        help='swept parameter',
    )
    values = sweep_parser.add_mutually_exclusive_group(required=True)
    values.add_argument('--range', type=str, default=None,
                        help='start:stop:count, evenly spaced')
    values.add_argument('--values', type=str, default=None,
                        help='comma separated increasing values')
    sweep_parser.add_argument('--out', type=str, default=None,
                              help='output directory')

    figure = subparsers.add_parser('figure', help='Plot data of a figure')
    figure.add_argument('--id', type=str, required=True,
                        choices=figures.FIGURE_IDS, help='figure id')
    figure.add_argument('--out', type=str, required=True,
                        help='output directory')
    figure.add_argument('--config', type=str, default=None,
                        help='optional yaml config, defaults otherwise')

    conv = subparsers.add_parser(
        'convergence', help='Heat current versus Fock cutoff')
    conv.add_argument('--config', type=str, required=True,
                      help='path to yaml configuration file')
    conv.add_argument(
        '--n-list',
        type=str,
        default=None,
        help='comma separated ascending cutoffs, automatic ladder if absent',
    )
    conv.add_argument('--out', type=str, default=None,
                      help='output directory')

    compare = subparsers.add_parser(
        'compare-models',
        help='Rectification versus coupling for all mechanisms')
    compare.add_argument('--out', type=str, required=True,
                         help='output directory')
    compare.add_argument('--config', type=str, default=None,
                         help='optional yaml config, defaults otherwise')
    return parser.parse_args(argv)


def run_steady(args, config, out_dir):
    """
    Forward/reverse evaluation of the configured point. Writes steady.csv
    and the forward transition ledger steady_ledger.csv.

    :return int exit code, list of written files
    """
    precision = config.output['precision']
    logger = logging.getLogger(LOGGER_NAME)
    csv_fname = os.path.join(out_dir, 'steady.csv')
    try:
        solver = PointSolver(build_model(config.model_params()),
                             config.numerics_options())
        record, forward, _ = forward_reverse(
            solver, config.baths['T_L'], config.baths['T_R'],
            config.baths['gamma'])
    except VALIDATION_ERRORS:
        raise
    except DiodeError as e:
        logger.error('Steady state failed: %s', e)
        record = sweep.error_record(config, e)
        sweep.write_sweep_csv([record], [None], csv_fname, precision)
        return EXIT_PARTIAL, [csv_fname]
    sweep.write_sweep_csv([record], [None], csv_fname, precision)
    ledger_fname = os.path.join(out_dir, 'steady_ledger.csv')
    aux_utils.write_csv(
        [asdict(entry) for entry in
         transition_ledger(forward.steady, forward.channels)],
        LEDGER_COLUMNS,
        ledger_fname,
        precision=precision,
    )
    logger.info(
        'q_f = %.12g, q_r = %.12g, R = %.6g, D_f = %.12g, D_r = %.12g, '
        'R_n = %.6g',
        record.q_f,
        record.q_r,
        record.rectification,
        record.photon_rate_f,
        record.photon_rate_r,
        record.photon_asymmetry,
    )
    if record.failed:
        logger.error('Steady state flagged: %s', record.error)
        return EXIT_PARTIAL, [csv_fname, ledger_fname]
    return EXIT_OK, [csv_fname, ledger_fname]


def run_sweep_command(args, config, out_dir):
    """
    Sweep of --param over --range or --values, written to sweep_<param>.csv

    :return int exit code, list of written files
    """
    if args.range is not None:
        start, stop, count = sweep.parse_range(args.range)
        grid = sweep.SweepGrid.from_range(args.param, start, stop, count,
                                          config)
    else:
        grid = sweep.SweepGrid(args.param, sweep.parse_values(args.values),
                               config)
    records = sweep.run_sweep(grid)
    csv_fname = os.path.join(out_dir, 'sweep_{}.csv'.format(args.param))
    sweep.write_sweep_csv(records, grid.values, csv_fname,
                          config.output['precision'])
    n_failed = sum(record.failed for record in records)
    return (EXIT_PARTIAL if n_failed else EXIT_OK), [csv_fname]


def run_figure_command(args, config, out_dir):
    """:return int exit code, list of written files"""
    result = figures.run_figure(args.id, config, out_dir)
    return (EXIT_PARTIAL if result.n_failed else EXIT_OK), result.files


def run_convergence_command(args, config, out_dir):
    """
    Convergence ladder written to convergence.csv

    :return int exit code, list of written files
    """
    n_list = None
    if args.n_list is not None:
        try:
            n_list = [int(n) for n in args.n_list.split(',')
                      if n.strip() != '']
        except ValueError:
            raise ConfigError(
                'Malformed cutoff list {}'.format(args.n_list))
    result = convergence.convergence_check(config, n_list)
    csv_fname = os.path.join(out_dir, 'convergence.csv')
    aux_utils.write_csv(result.rows, convergence.CONVERGENCE_COLUMNS,
                        csv_fname, precision=config.output['precision'])
    logger = logging.getLogger(LOGGER_NAME)
    if result.converged:
        logger.info('Converged at N = %d', result.converged_at)
        return EXIT_OK, [csv_fname]
    return EXIT_PARTIAL, [csv_fname]


def run_compare_command(args, config, out_dir):
    """:return int exit code, list of written files"""
    result = figures.run_compare_models(config, out_dir)
    return (EXIT_PARTIAL if result.n_failed else EXIT_OK), result.files


COMMANDS = {
    'steady': run_steady,
    'sweep': run_sweep_command,
    'figure': run_figure_command,
    'convergence': run_convergence_command,
    'compare-models': run_compare_command,
}


def write_manifest(args, config, out_dir, files, exit_code):
    """
    Record command, arguments, resolved config and versions

    :return str manifest file name
    """
    manifest = {
        'command': args.command,
        'arguments': vars(args),
        'config': config.to_dict(),
        'versions': aux_utils.get_versions(),
        'outputs': sorted(os.path.basename(f) for f in files),
        'exit_code': exit_code,
    }
    manifest_fname = os.path.join(out_dir, MANIFEST_FNAME)
    aux_utils.write_json(manifest, manifest_fname)
    return manifest_fname


def main(argv=None):
    """
    :param list/None argv: command line arguments, None for sys.argv
    :return int exit code
    """
    args = parse_args(argv)
    try:
        if args.config is not None:
            config = RunConfig.from_file(args.config)
        else:
            config = RunConfig.from_dict()
    except VALIDATION_ERRORS as e:
        logger = aux_utils.init_logger(LOGGER_NAME)
        logger.error(describe_error(e))
        return EXIT_INVALID
    out_dir = args.out if args.out is not None else \
        config.output['directory']
    os.makedirs(out_dir, exist_ok=True)
    logger = aux_utils.init_logger(
        LOGGER_NAME,
        os.path.join(out_dir, LOG_FNAME),
        config.verbose,
    )
    files = []
    try:
        exit_code, files = COMMANDS[args.command](args, config, out_dir)
    except VALIDATION_ERRORS as e:
        logger.error(describe_error(e))
        exit_code = EXIT_INVALID
    except DiodeError as e:
        logger.error(describe_error(e))
        exit_code = EXIT_PARTIAL
    write_manifest(args, config, out_dir, files, exit_code)
    logger.info('%s finished with exit code %d', args.command, exit_code)
    return exit_code


if __name__ == '__main__':
    sys.exit(main())
