"""
Output photon detection rate of the resonator bath and its forward/reverse
asymmetry.

With the lowering eigenoperators S_k of the left bath coupling, the rate is
D_L = sum_{k,k'} omega_k omega_k' Tr(rho S_k^dagger S_k'). The physical output
photon flux is gamma * D_L.
"""
import logging
import math

import numpy as np

from qr_diode.observables.heat_currents import check_basis
from qr_diode.utils.errors import DomainError

logger = logging.getLogger(__name__)

# Ratios with denominators below this are undefined
RATIO_FLOOR = 1e-15
CROSS_CHECK_RTOL = 1e-10


def weighted_lowering_operator(channels, dim):
    """
    B = sum_k omega_k S_k in the energy basis

    :param list channels: channels of one bath
    :param int dim: number of energy levels
    :return np.ndarray B
    """
    op = np.zeros((dim, dim), dtype=complex)
    for channel in channels:
        np.add.at(
            op,
            (channel.rows, channel.cols),
            channel.omega * channel.amplitudes,
        )
    return op


def diagonal_photon_rate(steady, channels):
    """
    Diagonal steady state form sum_k omega_k^2 sum_members |s|^2 p_j

    :param SteadyState steady: steady state
    :param list channels: channels of one bath
    :return float
    """
    terms = []
    for channel in channels:
        terms.extend(channel.omega ** 2 * channel.weights
                     * steady.populations[channel.cols])
    return math.fsum(terms)


def photon_detection_rate(steady, channels):
    """
    D_L = Tr(rho B^dagger B) with B = sum_k omega_k S_k, which expands to
    the double sum over channel pairs. For a diagonal steady state the
    result is checked against the diagonal form.

    :param SteadyState steady: steady state
    :param list channels: channels of the resonator bath
    :return float D_L: in omega_0^2 units
    :raise BasisMismatch: if steady and channels use different bases
    """
    check_basis(steady, channels)
    op = weighted_lowering_operator(channels, steady.dim)
    rho = steady.density_matrix()
    rate = float(np.trace(rho @ op.conj().T @ op).real)
    if steady.rho is None:
        diagonal = diagonal_photon_rate(steady, channels)
        if abs(rate - diagonal) > CROSS_CHECK_RTOL * max(abs(diagonal),
                                                         RATIO_FLOOR):
            logger.warning(
                'Photon rate %.12g differs from diagonal form %.12g',
                rate,
                diagonal,
            )
    return rate


def photon_asymmetry(d_forward, d_reverse):
    """
    R_n = |D_f - D_r| / |D_f + D_r|

    :param float d_forward: photon rate of the forward run
    :param float d_reverse: photon rate of the reverse run
    :return float: in [0, 1], nan if D_f + D_r < 1e-15
    :raise DomainError: if a rate is negative
    """
    if d_forward < 0 or d_reverse < 0:
        raise DomainError(
            'Photon rates must be non-negative, got {}, {}'.format(
                d_forward, d_reverse))
    denominator = abs(d_forward + d_reverse)
    if denominator < RATIO_FLOOR:
        return float('nan')
    return abs(d_forward - d_reverse) / denominator
