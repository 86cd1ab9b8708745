"""
Two-qubit thermal diode models used for comparison with the two-photon
Rabi diode. Tensor order is left qubit (x) right qubit, both baths couple
through sigma_x of their own qubit.
"""
from dataclasses import dataclass

import qr_diode.models.operators as ops
from qr_diode.models.model_spec import ModelSpec
from qr_diode.numerics.linalg import kron
from qr_diode.utils.errors import DomainError

ISING_ZZ = 'ising_zz'
ASYMMETRIC_ZX = 'asymmetric_zx'
DM = 'dm'
KINDS = (ISING_ZZ, ASYMMETRIC_ZX, DM)


@dataclass(frozen=True)
class TwoQubitParams:
    """
    :param float omega_L: left qubit frequency
    :param float omega_R: right qubit frequency
    :param float g: inter-qubit coupling
    :param str kind: ising_zz, asymmetric_zx or dm
    """
    omega_L: float
    omega_R: float
    g: float
    kind: str = ISING_ZZ

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(
                'Unknown two-qubit model {}, choose from {}'.format(
                    self.kind, KINDS))
        if not self.omega_L > 0 or not self.omega_R > 0:
            raise DomainError(
                'qubit frequencies must be positive, got {}, {}'.format(
                    self.omega_L, self.omega_R))
        if not self.g >= 0:
            raise DomainError('g must be non-negative, got {}'.format(self.g))

    @property
    def dim(self):
        return 4

    def truncation_note(self):
        """Two qubits need no cutoff"""
        return None

    def to_dict(self):
        return {
            'kind': self.kind,
            'omega_L': self.omega_L,
            'omega_R': self.omega_R,
            'g': self.g,
        }


def build_comparison_model(params):
    """
    Ising ZZ:      1/2 (w_L sz_L + w_R sz_R + g sz_L sz_R)
    Asymmetric ZX: 1/2 w_L sz_L + 1/2 w_R sz_R + g sz_L sx_R
    DM:            1/2 w_L sz_L + 1/2 w_R sz_R + g (sx_L sy_R - sy_L sx_R)

    :param TwoQubitParams params: validated parameters
    :return ModelSpec model: 4 dim model with X_L = sx (x) I, X_R = I (x) sx
    """
    eye = ops.identity(2)
    sx, sy, sz = ops.sigma_x(), ops.sigma_y(), ops.sigma_z()
    sz_l = kron(sz, eye)
    sz_r = kron(eye, sz)
    bare = 0.5 * (params.omega_L * sz_l + params.omega_R * sz_r)
    if params.kind == ISING_ZZ:
        interaction = 0.5 * kron(sz, sz)
    elif params.kind == ASYMMETRIC_ZX:
        interaction = kron(sz, sx)
    else:
        interaction = kron(sx, sy) - kron(sy, sx)
    jump_ops = {
        'L': kron(sx, eye),
        'R': kron(eye, sx),
    }
    return ModelSpec(
        hamiltonian=bare + params.g * interaction,
        jump_ops=jump_ops,
        params=params,
    )
