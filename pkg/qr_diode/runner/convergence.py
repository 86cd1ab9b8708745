"""
Fock truncation convergence: the heat current is recomputed on a ladder of
cutoffs until successive values agree.
"""
from dataclasses import dataclass, field
import logging

import numpy as np
import pandas as pd

from qr_diode.models.rabi import MIN_N_FOCK
from qr_diode.observables.rectification import PointSolver, build_model
from qr_diode.runner.run_config import RABI
from qr_diode.utils.errors import (
    ConfigError,
    NotConverged,
    TruncationTooSmall,
    describe_error,
)

logger = logging.getLogger(__name__)

CONVERGENCE_RTOL = 1e-6
MAX_N_FOCK = 80
AUTO_LADDER = (2, 5, 10) + tuple(range(20, MAX_N_FOCK + 1, 10))
# Currents below this are numerical zeros
ZERO_CURRENT = 1e-15
CONVERGENCE_COLUMNS = ['N', 'q_L', 'q_R', 'relative_change', 'converged']


@dataclass
class ConvergenceResult:
    """
    :param list rows: one dict per cutoff, CONVERGENCE_COLUMNS keys
    :param int/None converged_at: smallest N whose current already agrees
     with the next cutoff, None if the ladder didn't converge
    :param str/None error: NotConverged description
    """
    rows: list = field(default_factory=list)
    converged_at: int = None
    error: str = None

    @property
    def table(self):
        return pd.DataFrame(self.rows, columns=CONVERGENCE_COLUMNS)

    @property
    def converged(self):
        return self.converged_at is not None


def relative_change(current, previous):
    """|q_N - q_prev| / |q_N|, 0 if both currents are numerical zeros"""
    scale = max(abs(current), abs(previous))
    if scale < ZERO_CURRENT:
        return 0.
    return abs(current - previous) / max(abs(current), ZERO_CURRENT)


def forward_current(config, n_fock):
    """Forward heat currents of the config's model at cutoff n_fock"""
    point = config.updated(model={'n_fock': int(n_fock)})
    solver = PointSolver(build_model(point.model_params()),
                         point.numerics_options())
    result = solver.solve(point.baths['T_L'], point.baths['T_R'],
                          point.baths['gamma'])
    return result.currents


def check_ladder(n_list):
    """
    :param list n_list: cutoffs
    :raise ConfigError: if not strictly ascending or shorter than 2
    :raise TruncationTooSmall: for cutoffs below the admissible minimum
    """
    if len(n_list) < 2:
        raise ConfigError('Convergence needs at least 2 cutoffs')
    if np.any(np.diff(n_list) <= 0):
        raise ConfigError(
            'Cutoffs must be strictly ascending, got {}'.format(n_list))
    if n_list[0] < MIN_N_FOCK:
        raise TruncationTooSmall(
            'Smallest cutoff is {}, got {}'.format(MIN_N_FOCK, n_list[0]))


def convergence_check(config, n_list=None, rtol=CONVERGENCE_RTOL):
    """
    Heat current q_L on a ladder of cutoffs. With an explicit n_list every
    cutoff is evaluated; in auto mode (n_list None) the ladder stops at the
    first cutoff that agrees with its predecessor, or at N = 80.

    :param RunConfig config: config of a Rabi model
    :param list/None n_list: ascending cutoffs, None for the auto ladder
    :param float rtol: relative change counted as converged
    :return ConvergenceResult result: not converging is reported in
     result.error, not raised
    :raise ConfigError: for models without a cutoff or a bad ladder
    """
    if config.model['kind'] != RABI:
        raise ConfigError(
            'Convergence applies to kind rabi, got {}'.format(
                config.model['kind']))
    auto = n_list is None
    ladder = list(AUTO_LADDER) if auto else [int(n) for n in n_list]
    check_ladder(ladder)
    rows = []
    converged_at = None
    previous = None
    for n_fock in ladder:
        currents = forward_current(config, n_fock)
        change = None
        converged = False
        if previous is not None:
            change = relative_change(currents.q_L, previous[1])
            converged = change < rtol
            if converged and converged_at is None:
                converged_at = previous[0]
        logger.info('N = %d: q_L = %.12g, change %s', n_fock, currents.q_L,
                    change)
        rows.append({
            'N': n_fock,
            'q_L': currents.q_L,
            'q_R': currents.q_R,
            'relative_change': change,
            'converged': converged,
        })
        previous = (n_fock, currents.q_L)
        if auto and converged_at is not None:
            break
    result = ConvergenceResult(
        rows=rows,
        converged_at=converged_at,
    )
    if converged_at is None:
        err = NotConverged(
            'q_L not converged to {:g} by N = {}'.format(rtol, ladder[-1]))
        result.error = describe_error(err)
        logger.warning(result.error)
    return result
