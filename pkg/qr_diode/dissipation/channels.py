"""
Bohr frequency transition channels of one bath with Ohmic thermal rates.

A channel collects the energy basis matrix elements <E_i|S|E_j> (i < j) of a
bath coupling operator S whose Bohr frequencies E_j - E_i coincide within
deg_tol. Its eigenoperator is lowering, op = sum_members s |E_i><E_j|.
Emission (rate gamma_plus) acts with op, absorption (gamma_minus) with its
adjoint.
"""
from dataclasses import dataclass
import logging

import numpy as np

from qr_diode.models.model_spec import BATH_LABELS
from qr_diode.utils.errors import DomainError

logger = logging.getLogger(__name__)

AMPLITUDE_TOL = 1e-12


@dataclass(frozen=True)
class BathSpec:
    """
    :param str label: 'L' or 'R'
    :param float temperature: bath temperature in omega_0 units
    :param float gamma: dimensionless Ohmic prefactor
    """
    label: str
    temperature: float
    gamma: float

    def __post_init__(self):
        if self.label not in BATH_LABELS:
            raise DomainError(
                'Bath label must be one of {}, got {}'.format(
                    BATH_LABELS, self.label))
        if not self.temperature > 0:
            raise DomainError(
                'Bath {} temperature must be positive, got {}'.format(
                    self.label, self.temperature))
        if not self.gamma > 0:
            raise DomainError(
                'Bath {} gamma must be positive, got {}'.format(
                    self.label, self.gamma))


def bose_occupation(omega, temperature):
    """
    Mean thermal occupation 1 / (exp(omega / T) - 1)

    :param float/np.ndarray omega: mode frequency, > 0
    :param float temperature: bath temperature, > 0
    :return float/np.ndarray: occupation, 0 where omega / T overflows
    :raise DomainError: if omega <= 0 or T <= 0
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise DomainError(
            'Occupation needs positive frequency, got {}'.format(omega))
    if not temperature > 0:
        raise DomainError(
            'Occupation needs positive temperature, got {}'.format(
                temperature))
    with np.errstate(over='ignore'):
        n_bar = 1. / np.expm1(omega / temperature)
    if n_bar.ndim == 0:
        return float(n_bar)
    return n_bar


def ohmic_rates(omega, bath):
    """
    Emission and absorption rates of an Ohmic bath,
    gamma * omega * (n + 1) and gamma * omega * n

    :param float/np.ndarray omega: Bohr frequency
    :param BathSpec bath: bath
    :return gamma_plus, gamma_minus
    """
    n_bar = bose_occupation(omega, bath.temperature)
    prefactor = bath.gamma * np.asarray(omega, dtype=float)
    return prefactor * (n_bar + 1.), prefactor * n_bar


@dataclass(frozen=True, eq=False)
class TransitionChannel:
    """One Bohr frequency of one bath

    rows[k] < cols[k] index the member transitions E_cols -> E_rows with
    amplitudes <E_rows|S|E_cols>. basis is the EigenSystem the members refer to.
    """
    bath: str
    omega: float
    gamma_plus: float
    gamma_minus: float
    rows: np.ndarray
    cols: np.ndarray
    amplitudes: np.ndarray
    basis: object

    @property
    def members(self):
        """List of (i, j, amplitude)"""
        return [(int(i), int(j), complex(s))
                for i, j, s in zip(self.rows, self.cols, self.amplitudes)]

    @property
    def weights(self):
        """|amplitude|^2 per member"""
        return np.abs(self.amplitudes) ** 2

    @property
    def op(self):
        """Lowering eigenoperator in the energy basis, built on request"""
        dim = self.basis.dim
        op = np.zeros((dim, dim), dtype=complex)
        op[self.rows, self.cols] = self.amplitudes
        return op


def extract_channels(eigensystem,
                     coupling_op,
                     bath,
                     deg_tol=None,
                     amp_tol=AMPLITUDE_TOL):
    """
    Decompose a bath coupling operator into Bohr frequency channels

    Zero frequency (dephasing) components and frequencies <= deg_tol are
    dropped. Frequencies are sorted ascending and a new channel starts
    wherever the gap to the previous frequency exceeds deg_tol.

    :param EigenSystem eigensystem: spectrum of the model Hamiltonian
    :param np.ndarray coupling_op: S in the model's original basis
    :param BathSpec bath: bath the operator couples to
    :param float/None deg_tol: frequency grouping tolerance, None for
     1e-8 * max|E|
    :param float amp_tol: minimum |<E_i|S|E_j>| for a member
    :return list of TransitionChannel, ascending in omega (may be empty)
    """
    if deg_tol is None:
        deg_tol = eigensystem.default_deg_tol()
    energies = eigensystem.energies
    op_e = eigensystem.to_energy_basis(coupling_op)
    rows, cols = np.triu_indices(eigensystem.dim, k=1)
    amps = op_e[rows, cols]
    omegas = energies[cols] - energies[rows]
    keep = (np.abs(amps) > amp_tol) & (omegas > deg_tol)
    rows, cols, amps, omegas = rows[keep], cols[keep], amps[keep], omegas[keep]
    if len(omegas) == 0:
        logger.debug('Bath %s: no transition channels', bath.label)
        return []

    order = np.argsort(omegas, kind='stable')
    rows, cols, amps, omegas = \
        rows[order], cols[order], amps[order], omegas[order]
    # Channel boundaries where consecutive frequencies differ by > deg_tol
    starts = np.concatenate(([0], np.flatnonzero(np.diff(omegas) > deg_tol) + 1))
    ends = np.concatenate((starts[1:], [len(omegas)]))

    channels = []
    for start, end in zip(starts, ends):
        omega = float(np.mean(omegas[start:end]))
        gamma_plus, gamma_minus = ohmic_rates(omega, bath)
        channels.append(TransitionChannel(
            bath=bath.label,
            omega=omega,
            gamma_plus=float(gamma_plus),
            gamma_minus=float(gamma_minus),
            rows=rows[start:end],
            cols=cols[start:end],
            amplitudes=amps[start:end],
            basis=eigensystem,
        ))
    logger.debug(
        'Bath %s: %d channels from %d transitions',
        bath.label,
        len(channels),
        len(omegas),
    )
    return channels


def check_same_basis(channels, eigensystem):
    """
    :return bool: True if all channels were extracted from eigensystem
    """
    return all(ch.basis is eigensystem for ch in channels)
