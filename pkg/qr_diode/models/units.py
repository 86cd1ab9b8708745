"""Conversion from natural units (hbar = k_B = 1, energies in omega_0) to SI"""
import scipy.constants as const

from qr_diode.utils.errors import UnknownUnitKind

# Reference frequency omega_0 = 2 pi x 20 GHz, in rad/s
OMEGA_0 = 2 * const.pi * 20e9

_FACTORS = {
    'frequency': OMEGA_0,
    'rate': OMEGA_0,
    'time': 1. / OMEGA_0,
    'energy': const.hbar * OMEGA_0,
    'temperature': const.hbar * OMEGA_0 / const.k,
    'power': const.hbar * OMEGA_0 ** 2,
}
UNIT_KINDS = tuple(sorted(_FACTORS))


def units_to_si(value, kind):
    """
    Convert a quantity given in omega_0 units to SI

    frequency/rate -> rad/s, time -> s, energy -> J, temperature -> K,
    power (heat current) -> W

    :param float/np.ndarray value: quantity in natural units
    :param str kind: one of UNIT_KINDS
    :return: value in SI units
    :raise UnknownUnitKind: if kind isn't recognized
    """
    if kind not in _FACTORS:
        raise UnknownUnitKind(
            'Unit kind {} not in {}'.format(kind, UNIT_KINDS))
    return value * _FACTORS[kind]
