"""
Steady state heat currents. A current q_v > 0 means heat flows from bath v
into the system. Units are hbar * omega_0^2.
"""
from dataclasses import dataclass
import math

import numpy as np

from qr_diode.dissipation.channels import check_same_basis
from qr_diode.dissipation.liouvillian import apply_dissipator, split_by_bath
from qr_diode.utils.errors import BasisMismatch

CONSERVATION_RTOL = 1e-10
# Round-off allowance relative to the gross one-way flows a current is summed
# from
NOISE_RTOL = 1e-12
# Headroom on |sum_i E_i (M p)_i| <= ||E - E_0|| ||M p|| for the rounding of
# ||M p|| itself
STATIONARITY_FACTOR = 10.


@dataclass(frozen=True)
class HeatCurrents:
    """
    :param float q_L: heat current from the left bath into the system
    :param float q_R: heat current from the right bath into the system
    :param float noise: absolute round-off level of both currents
    """
    q_L: float
    q_R: float
    noise: float = 0.

    @property
    def conservation_residual(self):
        return abs(self.q_L + self.q_R)

    def tolerance(self, rtol):
        """max(rtol * max|q|, noise)"""
        return max(rtol * max(abs(self.q_L), abs(self.q_R)), self.noise)

    def is_conserved(self, rtol=CONSERVATION_RTOL):
        return self.conservation_residual <= self.tolerance(rtol)

    def agrees_with(self, other, rtol):
        """
        :param HeatCurrents other: currents of the same state in another form
        :param float rtol: relative tolerance
        :return bool: True if both baths agree within the larger tolerance
        """
        deviation = max(abs(self.q_L - other.q_L), abs(self.q_R - other.q_R))
        return deviation <= max(self.tolerance(rtol), other.tolerance(rtol))

    def get(self, label):
        return self.q_L if label == 'L' else self.q_R


def check_basis(steady, channels):
    """
    :raise BasisMismatch: if channels and steady state use different bases
    """
    if steady.basis is None or not check_same_basis(channels, steady.basis):
        raise BasisMismatch(
            'Steady state and channels come from different eigensystems')


def member_net_rates(steady, channel):
    """
    Net decay rate per member (i, j) of a channel,
    (Gamma_+ p_j - Gamma_- p_i) |<E_i|S|E_j>|^2

    :param SteadyState steady: steady state populations
    :param TransitionChannel channel: channel of the same basis
    :return np.ndarray: one rate per member
    """
    pops = steady.populations
    return (channel.gamma_plus * pops[channel.cols]
            - channel.gamma_minus * pops[channel.rows]) * channel.weights


def member_gross_rates(steady, channel):
    """Summed rates of both directions per member, the scale of its net rate"""
    pops = steady.populations
    return (channel.gamma_plus * pops[channel.cols]
            + channel.gamma_minus * pops[channel.rows]) * channel.weights


def heat_current_rate_form(steady, channels):
    """
    q_v = -sum over members of bath v of net_rate * (E_j - E_i)

    :param SteadyState steady: steady state
    :param list channels: channels of both baths
    :return HeatCurrents
    :raise BasisMismatch: if steady and channels use different bases
    """
    check_basis(steady, channels)
    energies = steady.basis.energies
    terms = {'L': [], 'R': []}
    gross = []
    for channel in channels:
        gaps = energies[channel.cols] - energies[channel.rows]
        terms[channel.bath].extend(-member_net_rates(steady, channel) * gaps)
        gross.extend(member_gross_rates(steady, channel) * np.abs(gaps))
    # q_L + q_R = sum_i (E_i - E_0) (M p)_i
    stationarity = np.linalg.norm(energies - energies[0]) * steady.residual
    return HeatCurrents(
        q_L=math.fsum(terms['L']),
        q_R=math.fsum(terms['R']),
        noise=(NOISE_RTOL * math.fsum(gross)
               + STATIONARITY_FACTOR * stationarity),
    )


def heat_current_trace_form(steady, channels):
    """
    q_v = Tr(H D_v[rho]) with D_v the dissipator of bath v, evaluated on the
    full steady state density matrix

    :param SteadyState steady: steady state
    :param list channels: channels of both baths
    :return HeatCurrents
    :raise BasisMismatch: if steady and channels use different bases
    """
    check_basis(steady, channels)
    # D_v is traceless, measuring energies from the ground level only
    # reduces rounding
    energies = steady.basis.energies - steady.basis.energies[0]
    rho = steady.density_matrix()
    currents = {'L': 0., 'R': 0.}
    for label, bath_channels in split_by_bath(channels).items():
        drho = apply_dissipator(bath_channels, rho)
        currents[label] = math.fsum(energies * np.diag(drho).real)
    flows = math.fsum(
        math.fsum(member_gross_rates(steady, ch)) for ch in channels)
    return HeatCurrents(
        q_L=currents['L'],
        q_R=currents['R'],
        noise=NOISE_RTOL * float(np.max(np.abs(energies))) * flows,
    )

