"""
Steady state of the global master equation.

solve_steady takes the null vector of the population rate matrix.
evolve_to_steady propagates the full density matrix with fixed RK4 steps
and serves as an independent check that coherences in the energy basis
decay and the populations agree.
"""
from dataclasses import dataclass
import logging
import math

import numpy as np

from qr_diode.dissipation.liouvillian import unvectorize, vectorize
from qr_diode.numerics.integrate import propagate_linear
from qr_diode.numerics.linalg import (
    NULLSPACE_TOL,
    check_density_matrix,
    nullspace,
)
from qr_diode.utils.errors import DomainError, NonPhysical, NotConverged

logger = logging.getLogger(__name__)

NULL_SPACE = 'NullSpace'
TIME_EVOLUTION = 'TimeEvolution'

# Stability limit of the fixed RK4 step, ||L||_1 * dt
MAX_STEP_NORM = 0.1
# Oracle horizon in units of the slowest channel time 1 / (gamma * omega)
HORIZON_FACTOR = 50.
DERIVATIVE_TOL = 1e-8
PHYSICAL_TOL = 1e-6
# Largest Hilbert dimension for which the dense superoperator is propagated
ORACLE_MAX_DIM = 42


@dataclass(frozen=True, eq=False)
class SteadyState:
    """
    :param np.ndarray populations: probability per energy level
    :param basis: EigenSystem the levels refer to
    :param float residual: ||M p|| (null space) or ||L vec(rho)|| (evolution)
    :param str method: NullSpace or TimeEvolution
    :param np.ndarray/None rho: final density matrix of the time evolution
    :param float/None max_offdiag: max |rho_ij|, i != j, of the final state
    :param tuple/None offdiag_history: (times, max |rho_ij|) samples
    """
    populations: np.ndarray
    basis: object
    residual: float
    method: str
    rho: np.ndarray = None
    max_offdiag: float = None
    offdiag_history: tuple = None

    @property
    def dim(self):
        return len(self.populations)

    def density_matrix(self):
        """Full density matrix in the energy basis"""
        if self.rho is not None:
            return self.rho
        return np.diag(self.populations).astype(complex)


def _normalize_populations(populations, tol):
    if populations.min() < -tol:
        raise NonPhysical(
            'negative population {:.3e}'.format(populations.min()))
    populations = np.clip(populations, 0., None)
    return populations / populations.sum()


def solve_steady(rates, tol=NULLSPACE_TOL):
    """
    Stationary populations p with M p = 0, sum(p) = 1

    :param RateMatrix rates: population rate matrix
    :param float tol: relative singular value threshold for the null space
    :return SteadyState
    :raise DegenerateSteadyState: if the null space isn't one dimensional
    """
    populations = nullspace(rates.entries, tol)
    residual = float(np.linalg.norm(rates.entries @ populations))
    scale = float(np.max(np.abs(rates.entries)))
    if residual > tol * max(scale, 1.):
        logger.warning('Steady state residual %.3e is large', residual)
    return SteadyState(
        populations=populations,
        basis=rates.basis,
        residual=residual,
        method=NULL_SPACE,
    )


def oracle_time_grid(superop, channels):
    """
    Default step and horizon of the time-evolution oracle

    dt = 0.1 / ||L||_1 and t_final = 50 / min(gamma * omega), where
    gamma * omega = Gamma_+ - Gamma_- for each Ohmic channel.

    :param np.ndarray superop: Liouvillian
    :param list channels: channels the Liouvillian was built from
    :return float t_final, float dt
    """
    norm = float(np.linalg.norm(superop, 1))
    if norm == 0 or len(channels) == 0:
        raise DomainError('Oracle needs a non-zero generator')
    dt = MAX_STEP_NORM / norm
    slowest = min(ch.gamma_plus - ch.gamma_minus for ch in channels)
    t_final = HORIZON_FACTOR / slowest
    return t_final, dt


def max_offdiag(rho):
    """max |rho_ij| over i != j"""
    off = np.abs(rho - np.diag(np.diag(rho)))
    return float(off.max()) if off.size > 1 else 0.


def evolve_to_steady(superop,
                     rho0,
                     t_final,
                     dt,
                     basis=None,
                     n_samples=200,
                     tol=DERIVATIVE_TOL):
    """
    Propagate vec(rho) with fixed RK4 steps up to t_final

    :param np.ndarray superop: Liouvillian in the energy basis
    :param np.ndarray rho0: initial density matrix in the energy basis
    :param float t_final: propagation time
    :param float dt: RK4 step, ||L||_1 * dt <= 0.1
    :param basis: EigenSystem the energy basis refers to
    :param int n_samples: number of samples of the off-diagonal magnitude
    :param float tol: max ||d vec(rho) / dt|| at t_final
    :return SteadyState: populations are the final diagonal
    :raise NotConverged: if ||L vec(rho)|| > tol at t_final
    :raise NonPhysical: if trace or positivity is off by more than 1e-6
    """
    rho0 = np.asarray(rho0, dtype=complex)
    dim = rho0.shape[0]
    if superop.shape != (dim ** 2, dim ** 2):
        raise DomainError(
            'Superoperator shape {} does not match rho dim {}'.format(
                superop.shape, dim))
    check_density_matrix(rho0, tol=PHYSICAL_TOL)
    if not dt > 0 or not t_final > 0:
        raise DomainError(
            'dt and t_final must be positive, got {}, {}'.format(dt, t_final))
    step_norm = np.linalg.norm(superop, 1) * dt
    if step_norm > MAX_STEP_NORM * (1 + 1e-9):
        raise DomainError(
            'RK4 step too large: ||L|| dt = {:.3g} > {}'.format(
                step_norm, MAX_STEP_NORM))

    n_steps = int(math.ceil(t_final / dt))
    logger.debug('Oracle: %d RK4 steps of %.3e', n_steps, dt)
    times, states = propagate_linear(
        superop, vectorize(rho0), dt, n_steps, n_samples)
    history = np.array([max_offdiag(unvectorize(s, dim)) for s in states])
    vec = states[-1]
    rho = unvectorize(vec, dim)
    rho = 0.5 * (rho + rho.conj().T)

    derivative = float(np.linalg.norm(superop @ vec))
    if derivative > tol:
        raise NotConverged(
            'Oracle not stationary at t = {:.4g}: ||L rho|| = {:.3e}'.format(
                times[-1], derivative))
    trace = np.trace(rho).real
    if abs(trace - 1.) > PHYSICAL_TOL:
        raise NonPhysical('Oracle trace drifted to {:.10g}'.format(trace))
    min_eig = np.linalg.eigvalsh(rho).min()
    if min_eig < -PHYSICAL_TOL:
        raise NonPhysical(
            'Oracle state has negative eigenvalue {:.3e}'.format(min_eig))

    populations = _normalize_populations(np.diag(rho).real, PHYSICAL_TOL)
    return SteadyState(
        populations=populations,
        basis=basis,
        residual=derivative,
        method=TIME_EVOLUTION,
        rho=rho,
        max_offdiag=max_offdiag(rho),
        offdiag_history=(np.array(times), history),
    )
