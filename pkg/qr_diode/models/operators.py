"""
Elementary qubit and resonator operators.

Conventions: sigma_z = diag(1, -1), so the qubit basis is (|e>, |g>).
The resonator is truncated to photon numbers 0..n_fock, dimension n_fock + 1,
with destroy(n_fock)[n - 1, n] = sqrt(n).
"""
import numpy as np


def identity(dim):
    """Identity operator of side dim"""
    return np.eye(dim, dtype=complex)


def sigma_x():
    return np.array([[0, 1], [1, 0]], dtype=complex)


def sigma_y():
    return np.array([[0, -1j], [1j, 0]], dtype=complex)


def sigma_z():
    return np.array([[1, 0], [0, -1]], dtype=complex)


def destroy(n_fock):
    """
    Truncated annihilation operator

    :param int n_fock: largest photon number retained
    :return np.ndarray: (n_fock + 1) square matrix with sqrt(n) on the
     first upper diagonal
    """
    return np.diag(np.sqrt(np.arange(1, n_fock + 1)), k=1).astype(complex)


def number(n_fock):
    """Photon number operator diag(0, 1, ..., n_fock)"""
    return np.diag(np.arange(n_fock + 1)).astype(complex)


def quadrature(n_fock):
    """a^dagger + a"""
    a = destroy(n_fock)
    return a + a.T


def quadrature_squared(n_fock):
    """
    (a^dagger + a)^2 in normal order, a^2 + a^dagger^2 + 2 a^dagger a + 1.
    Squaring the truncated quadrature would instead lose the top diagonal
    element, this form keeps <n|.|n> = 2n + 1 up to n = n_fock.

    :param int n_fock: largest photon number retained
    :return np.ndarray: (n_fock + 1) square matrix
    """
    a = destroy(n_fock)
    a2 = a @ a
    return a2 + a2.T + 2 * number(n_fock) + identity(n_fock + 1)


def parity(n_fock):
    """Photon number parity (-1)^{a^dagger a}"""
    return np.diag((-1.) ** np.arange(n_fock + 1)).astype(complex)
