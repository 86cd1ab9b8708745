"""
One-dimensional parameter sweeps. Every grid point is an independent
forward/reverse evaluation; points run in a process pool and come back in
grid order, so the CSV doesn't depend on the number of workers.
"""
from dataclasses import dataclass
import logging
import time

import numpy as np

from qr_diode.observables.rectification import (
    ObservableRecord,
    PointSolver,
    build_model,
    forward_reverse,
)
from qr_diode.runner.run_config import RABI
import qr_diode.utils.aux_utils as aux_utils
from qr_diode.utils.errors import ConfigError, DiodeError, describe_error
import qr_diode.utils.mp_utils as mp_utils

logger = logging.getLogger(__name__)

BATH_PARAMS = ('T_L', 'T_R')
MODEL_PARAMS = ('theta', 'g', 'omega_R')
SWEEP_PARAMS = BATH_PARAMS + MODEL_PARAMS

CSV_COLUMNS = [
    'swept_param',
    'T_L',
    'T_R',
    'q_L',
    'q_R',
    'q_f',
    'q_r',
    'R',
    'D_f',
    'D_r',
    'gammaD_f',
    'gammaD_r',
    'R_n',
    'n_fock',
    'residual',
    'error',
]


def parse_range(range_str):
    """
    Parse 'A:B:N' into linspace arguments

    :param str range_str: start:stop:count
    :return tuple (float start, float stop, int count)
    :raise ConfigError: if the string is malformed
    """
    parts = range_str.split(':')
    if len(parts) != 3:
        raise ConfigError(
            'Range must look like start:stop:count, got {}'.format(range_str))
    try:
        return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError('Malformed range {}'.format(range_str))


def parse_values(values_str):
    """Parse 'v1,v2,...' into a list of floats"""
    try:
        return [float(v) for v in values_str.split(',') if v.strip() != '']
    except ValueError:
        raise ConfigError('Malformed value list {}'.format(values_str))


def apply_value(config, param, value):
    """
    Config with one parameter replaced

    :param RunConfig config: base config
    :param str param: one of SWEEP_PARAMS
    :param float value: new value
    :return RunConfig
    """
    if param in BATH_PARAMS:
        return config.updated(baths={param: value})
    return config.updated(model={param: value})


@dataclass(frozen=True)
class SweepGrid:
    """
    :param str param: swept parameter, one of T_L, T_R, theta, g, omega_R
    :param tuple values: strictly increasing values, at least two
    :param RunConfig config: fixed model and bath parameters
    """
    param: str
    values: tuple
    config: object

    def __post_init__(self):
        if self.param not in SWEEP_PARAMS:
            raise ConfigError(
                'Sweep parameter must be one of {}, got {}'.format(
                    SWEEP_PARAMS, self.param))
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, 'values', values)
        if len(values) < 2:
            raise ConfigError('A sweep needs at least 2 values')
        if np.any(np.diff(values) <= 0):
            raise ConfigError(
                'Sweep values must be strictly increasing, got {}'.format(
                    values))
        model = self.config.model
        if self.param in MODEL_PARAMS:
            if self.param in ('theta', 'omega_R') and self.config.uses_flux:
                raise ConfigError(
                    'Cannot sweep {} of a model given by epsilon and q'.format(
                        self.param))
            if self.param == 'theta' and model['kind'] != RABI:
                raise ConfigError(
                    'theta only applies to kind rabi, got {}'.format(
                        model['kind']))
        # Every point must pass model validation up front
        for value in values:
            apply_value(self.config, self.param, value)

    @classmethod
    def from_range(cls, param, start, stop, count, config):
        """Grid of linspace(start, stop, count)"""
        if count < 2:
            raise ConfigError('A sweep needs at least 2 values')
        return cls(param, tuple(np.linspace(start, stop, count)), config)

    def point_configs(self):
        return [apply_value(self.config, self.param, v) for v in self.values]


def run_point(config):
    """
    Forward/reverse evaluation of one configured point

    :param RunConfig config: validated config
    :return ObservableRecord record
    :raise DiodeError: if the evaluation fails
    """
    start = time.time()
    solver = PointSolver(
        build_model(config.model_params()), config.numerics_options())
    record, _, _ = forward_reverse(
        solver, config.baths['T_L'], config.baths['T_R'],
        config.baths['gamma'])
    logger.debug('Point %s done in %.3f s', record.params,
                 time.time() - start)
    return record


def error_record(config, err):
    """
    Record of a failed point, only the inputs and the error are filled

    :param RunConfig config: config of the point
    :param Exception err: raised error
    :return ObservableRecord
    """
    params = config.model_params()
    return ObservableRecord(
        T_L=config.baths['T_L'],
        T_R=config.baths['T_R'],
        gamma=config.baths['gamma'],
        n_fock=getattr(params, 'n_fock', None),
        error=describe_error(err),
        params=params.to_dict(),
    )


def safe_run_point(config):
    """
    run_point that reports errors in the record instead of raising, for
    use in process pools

    :param RunConfig config: validated config
    :return ObservableRecord record
    """
    try:
        return run_point(config)
    except DiodeError as e:
        logger.warning('Point %s failed: %s', config.model, e)
        return error_record(config, e)


def run_configs(configs, desc=None, workers=None):
    """
    Evaluate a list of point configs

    :param list configs: RunConfig per point
    :param str/None desc: progress bar label
    :param int/None workers: worker processes, None for the first config's
     setting capped by QRDIODE_THREADS
    :return list records: ObservableRecord per config, same order
    """
    if len(configs) == 0:
        return []
    if workers is None:
        workers = configs[0].worker_count()
    return mp_utils.mp_wrapper(
        safe_run_point,
        [(config,) for config in configs],
        workers,
        desc=desc,
    )


def run_sweep(grid, workers=None):
    """
    :param SweepGrid grid: sweep definition
    :param int/None workers: worker processes
    :return list records: ObservableRecord per grid value
    """
    logger.info('Sweeping %s over %d values', grid.param, len(grid.values))
    records = run_configs(
        grid.point_configs(),
        desc='sweep {}'.format(grid.param),
        workers=workers,
    )
    n_failed = sum(record.failed for record in records)
    if n_failed:
        logger.warning('%d of %d sweep points failed',
                       n_failed, len(records))
    return records


def records_to_rows(records, values, extra=None):
    """
    CSV rows for records, swept value in swept_param

    :param list records: ObservableRecord objects
    :param list values: swept value per record, None for no sweep
    :param dict/None extra: constant extra columns added to every row
    :return list of dicts
    """
    rows = []
    for record, value in zip(records, values):
        row = record.to_row()
        row['swept_param'] = value
        if extra:
            row.update(extra)
        rows.append(row)
    return rows


def write_sweep_csv(records, values, csv_fname, precision=12):
    """
    :param list records: ObservableRecord objects
    :param list values: swept value per record
    :param str csv_fname: output path
    :param int precision: significant digits
    :return pd.DataFrame frame: the written table
    """
    return aux_utils.write_csv(
        records_to_rows(records, values),
        CSV_COLUMNS,
        csv_fname,
        precision=precision,
    )
