"""
Dissipative two-photon quantum Rabi model in the rotated qubit basis.

Tensor order is qubit (x) resonator:

    H = omega_L a^dagger a - omega_R / 2 sigma_z
        + g (sin(theta) sigma_z + cos(theta) sigma_x) (a^dagger + a)^2
    S_L = a^dagger + a            (resonator bath)
    S_R = sin(theta) sigma_z + cos(theta) sigma_x   (qubit bath)
"""
from dataclasses import dataclass
import logging
import math

import qr_diode.models.operators as ops
from qr_diode.models.model_spec import ModelSpec
from qr_diode.numerics.linalg import kron
from qr_diode.utils.errors import (
    DomainError,
    SpectralCollapse,
    TruncationTooSmall,
)

logger = logging.getLogger(__name__)

MIN_N_FOCK = 2
# Auto truncation switches to the larger cutoff above this coupling
AUTO_N_FOCK_G = 0.15
ANGLE_TOL = 1e-12
# From g = omega_L / 4 on the two-photon spectrum is not bounded below
BOUNDED_G_RATIO = 0.25


def default_n_fock(g):
    """
    Fock cutoff used when none is given

    :param float g: two-photon coupling
    :return int: 20 for g <= 0.15, 40 above
    """
    return 20 if g <= AUTO_N_FOCK_G else 40


@dataclass(frozen=True)
class RabiParams:
    """Parameters of the two-photon Rabi model, in units of omega_0

    :param float omega_L: resonator frequency
    :param float omega_R: qubit frequency
    :param float g: two-photon coupling, 0 <= g < omega_L / 2
    :param float theta: mixing angle in [0, pi/2]
    :param int/None n_fock: photon cutoff N (resonator dim N + 1), None for
     default_n_fock(g)
    """
    omega_L: float
    omega_R: float
    g: float
    theta: float = 0.
    n_fock: int = None

    def __post_init__(self):
        if self.n_fock is None:
            object.__setattr__(self, 'n_fock', default_n_fock(self.g))
        if not self.omega_L > 0:
            raise DomainError(
                'omega_L must be positive, got {}'.format(self.omega_L))
        if not self.omega_R > 0:
            raise DomainError(
                'omega_R must be positive, got {}'.format(self.omega_R))
        if not self.g >= 0:
            raise DomainError('g must be non-negative, got {}'.format(self.g))
        if self.g >= self.omega_L / 2:
            raise SpectralCollapse(
                'g = {} is at or beyond the spectral collapse point '
                'omega_L / 2 = {}'.format(self.g, self.omega_L / 2))
        if not -ANGLE_TOL <= self.theta <= math.pi / 2 + ANGLE_TOL:
            raise DomainError(
                'theta must be in [0, pi/2], got {}'.format(self.theta))
        if int(self.n_fock) != self.n_fock:
            raise TruncationTooSmall(
                'n_fock must be an integer, got {}'.format(self.n_fock))
        object.__setattr__(self, 'n_fock', int(self.n_fock))
        if self.n_fock < MIN_N_FOCK:
            raise TruncationTooSmall(
                'n_fock must be at least {}, got {}'.format(
                    MIN_N_FOCK, self.n_fock))

    @classmethod
    def from_flux(cls, omega_L, epsilon, q, g, n_fock=None):
        """
        Build from flux qubit parameters: omega_R = sqrt(epsilon^2 + q^2),
        tan(theta) = epsilon / q

        :param float omega_L: resonator frequency
        :param float epsilon: qubit energy bias
        :param float q: qubit tunnel splitting
        :param float g: two-photon coupling
        :param int/None n_fock: photon cutoff
        :return RabiParams
        """
        if epsilon < 0 or q < 0:
            raise DomainError(
                'epsilon and q must be non-negative, got {}, {}'.format(
                    epsilon, q))
        return cls(
            omega_L=omega_L,
            omega_R=math.hypot(epsilon, q),
            g=g,
            theta=math.atan2(epsilon, q),
            n_fock=n_fock,
        )

    @property
    def dim(self):
        return 2 * (self.n_fock + 1)

    @property
    def truncation_dependent(self):
        """True if energies keep falling with n_fock, g >= omega_L / 4"""
        return self.g >= BOUNDED_G_RATIO * self.omega_L

    def truncation_note(self):
        """
        :return str/None: error column note for truncation dependent
         parameters, None otherwise
        """
        if not self.truncation_dependent:
            return None
        return ('TruncationDependent: g = {} >= omega_L / 4 = {}, '
                'results depend on n_fock = {}'.format(
                    self.g, BOUNDED_G_RATIO * self.omega_L, self.n_fock))

    def to_dict(self):
        return {
            'kind': 'rabi',
            'omega_L': self.omega_L,
            'omega_R': self.omega_R,
            'g': self.g,
            'theta': self.theta,
            'n_fock': self.n_fock,
        }


def qubit_coupling(theta):
    """sin(theta) sigma_z + cos(theta) sigma_x"""
    return math.sin(theta) * ops.sigma_z() + math.cos(theta) * ops.sigma_x()


def photon_parity(n_fock):
    """
    Photon number parity on the full space, I (x) (-1)^{a^dagger a}.
    The two-photon coupling changes n by 0 or 2, so H commutes with it.

    :param int n_fock: photon cutoff
    :return np.ndarray: 2(n_fock + 1) square diagonal matrix
    """
    return kron(ops.identity(2), ops.parity(n_fock))


def build_two_photon_rabi(params):
    """
    Hamiltonian and bath couplings of the two-photon Rabi model

    :param RabiParams params: validated model parameters
    :return ModelSpec model: dim 2(N + 1), jump_ops S_L and S_R
    """
    n_fock = params.n_fock
    if params.truncation_dependent:
        logger.warning(
            'g = %s >= omega_L / 4: the two-photon spectrum is not bounded '
            'below, energies depend on the cutoff n_fock = %s',
            params.g,
            n_fock,
        )
    qubit_id = ops.identity(2)
    res_id = ops.identity(n_fock + 1)
    coupling = qubit_coupling(params.theta)

    hamiltonian = (
        params.omega_L * kron(qubit_id, ops.number(n_fock))
        - 0.5 * params.omega_R * kron(ops.sigma_z(), res_id)
        + params.g * kron(coupling, ops.quadrature_squared(n_fock))
    )
    jump_ops = {
        'L': kron(qubit_id, ops.quadrature(n_fock)),
        'R': kron(coupling, res_id),
    }
    return ModelSpec(hamiltonian=hamiltonian, jump_ops=jump_ops, params=params)
