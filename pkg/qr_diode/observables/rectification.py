"""
Forward/reverse protocol for one model: solve the steady state with the
bath temperatures as given and exchanged, then derive the rectification
and photon asymmetry coefficients.
"""
from dataclasses import dataclass, field
import logging
import math

import numpy as np

from qr_diode.dissipation.channels import (
    AMPLITUDE_TOL,
    BathSpec,
    extract_channels,
)
from qr_diode.dissipation.liouvillian import build_liouvillian
from qr_diode.dissipation.rate_matrix import build_rate_matrix
from qr_diode.models.model_spec import ModelSpec
from qr_diode.models.rabi import RabiParams, build_two_photon_rabi
from qr_diode.models.two_qubit import TwoQubitParams, build_comparison_model
from qr_diode.numerics.linalg import NULLSPACE_TOL, eigh
from qr_diode.observables.heat_currents import (
    CONSERVATION_RTOL,
    heat_current_rate_form,
    heat_current_trace_form,
)
from qr_diode.observables.photon_flux import (
    RATIO_FLOOR,
    photon_asymmetry,
    photon_detection_rate,
)
import qr_diode.steady.steady_state as steady_state
from qr_diode.utils.errors import DomainError

logger = logging.getLogger(__name__)

TRACE_FORM_RTOL = 1e-10
# Error column prefix for ratios that are undefined, not failed
NOT_DEFINED = 'NotDefined'
NOTE_SEPARATOR = '; '


@dataclass(frozen=True)
class NumericsOptions:
    """
    :param float/None deg_tol: Bohr frequency grouping tolerance, None for
     1e-8 * max|E|
    :param float amp_tol: smallest matrix element kept in a channel
    :param float nullspace_tol: relative singular value threshold
    :param bool oracle: cross-check with the time-evolution oracle
    :param float/None rk4_dt: oracle step, None for 0.1 / ||L||_1
    :param float/None t_final: oracle horizon, None for 50 / (gamma omega_min)
    """
    deg_tol: float = None
    amp_tol: float = AMPLITUDE_TOL
    nullspace_tol: float = NULLSPACE_TOL
    oracle: bool = False
    rk4_dt: float = None
    t_final: float = None


def build_model(params):
    """
    :param RabiParams/TwoQubitParams params: model parameters
    :return ModelSpec
    """
    if isinstance(params, RabiParams):
        return build_two_photon_rabi(params)
    if isinstance(params, TwoQubitParams):
        return build_comparison_model(params)
    raise DomainError('Unknown model parameters {!r}'.format(params))


@dataclass(frozen=True, eq=False)
class PointResult:
    """Everything computed for one pair of bath temperatures"""
    baths: tuple
    channels: list
    steady: object
    currents: object
    trace_currents: object
    photon_rate: float
    oracle: object = None
    violations: tuple = ()

    @property
    def oracle_deviation(self):
        """L-inf distance between null space and oracle populations"""
        if self.oracle is None:
            return None
        return float(np.max(np.abs(
            self.oracle.populations - self.steady.populations)))


class PointSolver:
    """Diagonalizes a model once and solves it for any bath temperatures"""

    def __init__(self, model, numerics=None):
        """
        :param ModelSpec model: model to solve
        :param NumericsOptions/None numerics: solver options
        """
        if not isinstance(model, ModelSpec):
            raise DomainError('PointSolver needs a ModelSpec')
        self.model = model
        self.numerics = numerics if numerics is not None else NumericsOptions()
        self.eigensystem = eigh(model.hamiltonian)
        self.deg_tol = self.numerics.deg_tol
        if self.deg_tol is None:
            self.deg_tol = self.eigensystem.default_deg_tol()
        degenerate = self.eigensystem.degenerate_pairs(self.deg_tol)
        if degenerate:
            logger.warning(
                'Model has %d degenerate level pairs, first %s',
                len(degenerate),
                degenerate[0],
            )

    def channels(self, bath_l, bath_r):
        """Transition channels of both baths"""
        return [
            ch
            for bath in (bath_l, bath_r)
            for ch in extract_channels(
                self.eigensystem,
                self.model.jump_ops[bath.label],
                bath,
                deg_tol=self.deg_tol,
                amp_tol=self.numerics.amp_tol,
            )
        ]

    def run_oracle(self, channels):
        """
        Time-evolution steady state from the maximally mixed state

        :param list channels: channels of both baths
        :return SteadyState/None: None if the model is too large
        """
        dim = self.eigensystem.dim
        if dim > steady_state.ORACLE_MAX_DIM:
            logger.warning(
                'Oracle skipped: dimension %d exceeds %d',
                dim,
                steady_state.ORACLE_MAX_DIM,
            )
            return None
        superop = build_liouvillian(
            self.eigensystem, channels, include_hamiltonian=False)
        t_final, dt = steady_state.oracle_time_grid(superop, channels)
        if self.numerics.t_final is not None:
            t_final = self.numerics.t_final
        if self.numerics.rk4_dt is not None:
            dt = self.numerics.rk4_dt
        return steady_state.evolve_to_steady(
            superop,
            np.eye(dim) / dim,
            t_final,
            dt,
            basis=self.eigensystem,
        )

    def solve(self, t_l, t_r, gamma):
        """
        :param float t_l: left bath temperature
        :param float t_r: right bath temperature
        :param float gamma: Ohmic prefactor of both baths
        :return PointResult
        """
        bath_l = BathSpec('L', t_l, gamma)
        bath_r = BathSpec('R', t_r, gamma)
        channels = self.channels(bath_l, bath_r)
        rates = build_rate_matrix(
            channels, self.eigensystem.dim, basis=self.eigensystem)
        steady = steady_state.solve_steady(rates, self.numerics.nullspace_tol)
        currents = heat_current_rate_form(steady, channels)
        trace_currents = heat_current_trace_form(steady, channels)
        violations = current_violations(currents, trace_currents)
        for note in violations:
            logger.warning('At T_L=%s, T_R=%s: %s', t_l, t_r, note)
        photon_rate = photon_detection_rate(
            steady, [ch for ch in channels if ch.bath == 'L'])
        oracle = None
        if self.numerics.oracle:
            oracle = self.run_oracle(channels)
        return PointResult(
            baths=(bath_l, bath_r),
            channels=channels,
            steady=steady,
            currents=currents,
            trace_currents=trace_currents,
            photon_rate=photon_rate,
            oracle=oracle,
            violations=violations,
        )


def current_violations(currents, trace_currents):
    """
    Broken steady state invariants: q_L + q_R = 0 and agreement of the rate
    and trace forms, both to a relative 1e-10 above round-off

    :param HeatCurrents currents: rate form currents
    :param HeatCurrents trace_currents: trace form currents of the same state
    :return tuple: error column notes, empty if both invariants hold
    """
    violations = []
    if not currents.is_conserved():
        violations.append(
            'NonConserved: |q_L + q_R| = {:.3g} > {:.3g}'.format(
                currents.conservation_residual,
                currents.tolerance(CONSERVATION_RTOL),
            ))
    if not currents.agrees_with(trace_currents, TRACE_FORM_RTOL):
        violations.append(
            'FormMismatch: rate form ({:.6g}, {:.6g}) vs trace form '
            '({:.6g}, {:.6g})'.format(
                currents.q_L,
                currents.q_R,
                trace_currents.q_L,
                trace_currents.q_R,
            ))
    return tuple(violations)


def rectification_coefficient(q_forward, q_reverse):
    """
    R = |q_f + q_r| / |q_f - q_r|

    :param float q_forward: current from the right bath, forward run
    :param float q_reverse: current from the right bath, reverse run
    :return float: 0 for reciprocal transport, 1 for a perfect diode, nan
     if |q_f - q_r| < 1e-15
    """
    denominator = abs(q_forward - q_reverse)
    if denominator < RATIO_FLOOR:
        return float('nan')
    return abs(q_forward + q_reverse) / denominator


@dataclass
class ObservableRecord:
    """
    One forward/reverse evaluation. T_L, T_R and q_L, q_R refer to the
    forward run; the reverse run exchanges the temperatures.
    """
    T_L: float = None
    T_R: float = None
    q_L: float = None
    q_R: float = None
    q_f: float = None
    q_r: float = None
    rectification: float = None
    photon_rate_f: float = None
    photon_rate_r: float = None
    photon_asymmetry: float = None
    gamma: float = None
    n_fock: int = None
    residual: float = None
    oracle_deviation: float = None
    error: str = None
    params: dict = field(default_factory=dict)

    @property
    def failed(self):
        """True if any error note is more than an undefined ratio"""
        if self.error is None:
            return False
        return any(not note.startswith(NOT_DEFINED)
                   for note in self.error.split(NOTE_SEPARATOR))

    def to_row(self):
        """Values keyed by CSV column name"""
        gamma_d = [None if (d is None or self.gamma is None)
                   else self.gamma * d
                   for d in (self.photon_rate_f, self.photon_rate_r)]
        return {
            'T_L': self.T_L,
            'T_R': self.T_R,
            'q_L': self.q_L,
            'q_R': self.q_R,
            'q_f': self.q_f,
            'q_r': self.q_r,
            'R': self.rectification,
            'D_f': self.photon_rate_f,
            'D_r': self.photon_rate_r,
            'gammaD_f': gamma_d[0],
            'gammaD_r': gamma_d[1],
            'R_n': self.photon_asymmetry,
            'n_fock': self.n_fock,
            'residual': self.residual,
            'error': self.error,
        }


def undefined_ratios_note(record):
    """
    :param ObservableRecord record: evaluated record
    :return str/None: error column note naming the nan ratios
    """
    undefined = []
    if math.isnan(record.rectification):
        undefined.append('R (|q_f - q_r| < {:g})'.format(RATIO_FLOOR))
    if math.isnan(record.photon_asymmetry):
        undefined.append('R_n (D_f + D_r < {:g})'.format(RATIO_FLOOR))
    if not undefined:
        return None
    return '{}: {}'.format(NOT_DEFINED, ', '.join(undefined))


def forward_reverse(solver, t_l, t_r, gamma):
    """
    Forward run with (T_L, T_R) as given, reverse run with them exchanged

    :param PointSolver solver: solver of the model
    :param float t_l: left temperature of the forward run
    :param float t_r: right temperature of the forward run
    :param float gamma: Ohmic prefactor
    :return ObservableRecord record
    :return PointResult forward, PointResult reverse
    """
    forward = solver.solve(t_l, t_r, gamma)
    reverse = solver.solve(t_r, t_l, gamma)
    q_f = forward.currents.q_R
    q_r = reverse.currents.q_R
    deviations = [res.oracle_deviation for res in (forward, reverse)
                  if res.oracle_deviation is not None]
    params = solver.model.params
    record = ObservableRecord(
        T_L=t_l,
        T_R=t_r,
        q_L=forward.currents.q_L,
        q_R=forward.currents.q_R,
        q_f=q_f,
        q_r=q_r,
        rectification=rectification_coefficient(q_f, q_r),
        photon_rate_f=forward.photon_rate,
        photon_rate_r=reverse.photon_rate,
        photon_asymmetry=photon_asymmetry(
            forward.photon_rate, reverse.photon_rate),
        gamma=gamma,
        n_fock=getattr(params, 'n_fock', None),
        residual=max(forward.currents.conservation_residual,
                     reverse.currents.conservation_residual),
        oracle_deviation=max(deviations) if deviations else None,
        params=params.to_dict(),
    )
    notes = ['{} ({} run)'.format(note, run)
             for run, result in (('forward', forward), ('reverse', reverse))
             for note in result.violations]
    notes.append(params.truncation_note())
    notes.append(undefined_ratios_note(record))
    record.error = NOTE_SEPARATOR.join(n for n in notes if n) or None
    return record, forward, reverse


def rectification_pair(params, t_hot, t_cold, gamma, numerics=None):
    """
    Forward run T_L = t_cold, T_R = t_hot so q_f is the current leaving the
    hot right bath; the reverse run exchanges the baths.

    :param RabiParams/TwoQubitParams/ModelSpec params: model or parameters
    :param float t_hot: hot temperature
    :param float t_cold: cold temperature
    :param float gamma: Ohmic prefactor of both baths
    :param NumericsOptions/None numerics: solver options
    :return ObservableRecord
    """
    model = params if isinstance(params, ModelSpec) else build_model(params)
    solver = PointSolver(model, numerics)
    record, _, _ = forward_reverse(solver, t_cold, t_hot, gamma)
    return record
