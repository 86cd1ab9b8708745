"""
Lindblad superoperator of the global master equation in the energy basis.

Density matrices are vectorized by column stacking, vec(rho)[r + c * d] =
rho[r, c], so vec(A rho B) = (B^T (x) A) vec(rho). Each channel contributes

    Gamma_+ D[S](rho) + Gamma_- D[S^dagger](rho),
    D[A](rho) = A rho A^dagger - 1/2 {A^dagger A, rho}

without cross terms between different Bohr frequencies.
"""
import numpy as np

from qr_diode.numerics.linalg import kron


def vectorize(rho):
    """Column stacking vec(rho)"""
    return np.asarray(rho).reshape(-1, order='F')


def unvectorize(vec, dim):
    """Inverse of vectorize"""
    return np.asarray(vec).reshape((dim, dim), order='F')


def jump_terms(channel):
    """
    Lindblad operators of one channel as sparse triplets. A jump operator
    A = sum_k amps[k] |out_idx[k]><in_idx[k]| is returned as
    (rate, out_idx, in_idx, amps): emission with S, absorption with S^dagger.

    :param TransitionChannel channel: channel
    :return list of tuples
    """
    return [
        (channel.gamma_plus, channel.rows, channel.cols, channel.amplitudes),
        (channel.gamma_minus, channel.cols, channel.rows,
         np.conj(channel.amplitudes)),
    ]


def _add_jump_dag_jump(target, rate, out_idx, in_idx, amps):
    """
    Add rate * A^dagger A to target in place. Only member pairs sharing an
    output level contribute, (A^dagger A)[in_k, in_l] += conj(a_k) a_l.
    """
    left, right = np.nonzero(out_idx[:, np.newaxis] == out_idx[np.newaxis, :])
    np.add.at(
        target,
        (in_idx[left], in_idx[right]),
        rate * np.conj(amps[left]) * amps[right],
    )


def build_dissipator(channels, dim):
    """
    Dissipative part of the Liouvillian for a set of channels

    :param list channels: TransitionChannel objects from one EigenSystem
    :param int dim: number of energy levels
    :return np.ndarray: dim^2 x dim^2 superoperator
    """
    superop = np.zeros((dim ** 2, dim ** 2), dtype=complex)
    anticomm = np.zeros((dim, dim), dtype=complex)
    for channel in channels:
        for rate, out_idx, in_idx, amps in jump_terms(channel):
            if rate == 0:
                continue
            # A rho A^dagger
            rows = out_idx[:, np.newaxis] + out_idx[np.newaxis, :] * dim
            cols = in_idx[:, np.newaxis] + in_idx[np.newaxis, :] * dim
            np.add.at(
                superop,
                (rows, cols),
                rate * amps[:, np.newaxis] * np.conj(amps)[np.newaxis, :],
            )
            _add_jump_dag_jump(anticomm, rate, out_idx, in_idx, amps)
    eye = np.eye(dim)
    superop -= 0.5 * (kron(eye, anticomm) + kron(anticomm.T, eye))
    return superop


def apply_dissipator(channels, rho):
    """
    Dissipator of a set of channels applied to rho without forming the
    superoperator

    :param list channels: TransitionChannel objects from one EigenSystem
    :param np.ndarray rho: density matrix in the energy basis
    :return np.ndarray: D[rho]
    """
    rho = np.asarray(rho, dtype=complex)
    dim = rho.shape[0]
    out = np.zeros((dim, dim), dtype=complex)
    anticomm = np.zeros((dim, dim), dtype=complex)
    for channel in channels:
        for rate, out_idx, in_idx, amps in jump_terms(channel):
            if rate == 0:
                continue
            np.add.at(
                out,
                (out_idx[:, np.newaxis], out_idx[np.newaxis, :]),
                rate * amps[:, np.newaxis] * np.conj(amps)[np.newaxis, :]
                * rho[in_idx[:, np.newaxis], in_idx[np.newaxis, :]],
            )
            _add_jump_dag_jump(anticomm, rate, out_idx, in_idx, amps)
    return out - 0.5 * (anticomm @ rho + rho @ anticomm)


def build_liouvillian(eigensystem, channels, include_hamiltonian=True):
    """
    Full Lindblad generator L with d vec(rho) / dt = L vec(rho), in the
    energy basis of eigensystem

    :param EigenSystem eigensystem: working basis
    :param list channels: channels of all baths
    :param bool include_hamiltonian: add -i[H, rho]; without it L is the
     generator in the interaction picture
    :return np.ndarray: dim^2 x dim^2 complex superoperator
    """
    dim = eigensystem.dim
    superop = build_dissipator(channels, dim)
    if include_hamiltonian:
        energies = eigensystem.energies
        # -i (E_r - E_c) on vec index r + c * dim
        bohr = energies[:, np.newaxis] - energies[np.newaxis, :]
        superop[np.diag_indices(dim ** 2)] += -1j * vectorize(bohr)
    return superop


def split_by_bath(channels):
    """
    :param list channels: channels of all baths
    :return dict: {label: channels of that bath}, labels sorted
    """
    labels = sorted({ch.bath for ch in channels})
    return {label: [ch for ch in channels if ch.bath == label]
            for label in labels}

