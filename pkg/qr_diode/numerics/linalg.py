"""
Dense complex linear algebra shared by all modules.

Operators (Hamiltonians, jump operators, density matrices) are plain square
complex numpy arrays; the QOperator name below only documents that contract.
Energies are in units of the reference frequency omega_0, hbar = k_B = 1.
"""
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from qr_diode.utils.errors import (
    DegenerateSteadyState,
    NonHermitianInput,
    NonPhysical,
)

# Square complex np.ndarray of side dim
QOperator = np.ndarray

HERMITIAN_RTOL = 1e-12
DENSITY_TOL = 1e-10
NULLSPACE_TOL = 1e-10
NEGATIVE_CLAMP = 1e-10


def as_operator(data):
    """
    Convert array-like to a square complex matrix

    :param array-like data: matrix entries
    :return np.ndarray op: complex square matrix
    :raise ValueError: if data isn't a square 2D matrix
    """
    op = np.asarray(data, dtype=complex)
    if op.ndim != 2 or op.shape[0] != op.shape[1] or op.shape[0] < 1:
        raise ValueError(
            'Operator must be a non-empty square matrix, got shape {}'.format(
                op.shape))
    return op


def dag(op):
    """Conjugate transpose"""
    return np.conj(op).T


def commutator(a, b):
    """[a, b] = ab - ba"""
    return a @ b - b @ a


def hermiticity_error(op):
    """
    :param np.ndarray op: square matrix
    :return float: max |op - op^dagger|
    """
    op = np.asarray(op)
    return float(np.max(np.abs(op - dag(op))))


def is_hermitian(op, rtol=HERMITIAN_RTOL):
    """
    Hermitian within max|A - A^dagger| <= rtol * max|A|

    :param np.ndarray op: square matrix
    :param float rtol: relative tolerance
    :return bool
    """
    op = np.asarray(op)
    scale = float(np.max(np.abs(op))) if op.size else 0.
    return hermiticity_error(op) <= rtol * scale


def check_hermitian(op, rtol=HERMITIAN_RTOL, name='operator'):
    """
    :raise NonHermitianInput: if op isn't Hermitian within rtol
    """
    if not is_hermitian(op, rtol):
        raise NonHermitianInput(
            '{} is not Hermitian: max|A - A^dagger| = {:.3e}'.format(
                name, hermiticity_error(op)))


def check_density_matrix(rho, tol=DENSITY_TOL):
    """
    Validate a density matrix: Hermitian, unit trace, positive semidefinite

    :param np.ndarray rho: density matrix
    :param float tol: tolerance on trace and negative eigenvalues
    :raise NonPhysical: if any condition is violated
    """
    rho = as_operator(rho)
    if not is_hermitian(rho, max(tol, HERMITIAN_RTOL)):
        raise NonPhysical('density matrix is not Hermitian')
    trace = np.trace(rho).real
    if abs(trace - 1.) > tol:
        raise NonPhysical('density matrix trace {:.12g} != 1'.format(trace))
    min_eig = np.linalg.eigvalsh(0.5 * (rho + dag(rho))).min()
    if min_eig < -tol:
        raise NonPhysical(
            'density matrix has negative eigenvalue {:.3e}'.format(min_eig))


def kron(a, b, *more):
    """
    Kronecker product with the first factor as the slow index:
    (A (x) B)[i*dimB + k, j*dimB + l] = A[i, j] * B[k, l]

    :param np.ndarray a: left factor
    :param np.ndarray b: right factor
    :param more: further factors, multiplied left to right
    :return np.ndarray: product operator
    """
    result = np.kron(as_operator(a), as_operator(b))
    for factor in more:
        result = np.kron(result, as_operator(factor))
    return result


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Eigen decomposition of a Hamiltonian, the working (energy) basis

    energies are ascending, vectors holds orthonormal eigenvectors as columns
    """
    energies: np.ndarray
    vectors: np.ndarray
    source_dim: int

    @property
    def dim(self):
        return len(self.energies)

    def to_energy_basis(self, op):
        """
        Express an operator given in the original basis in the energy basis

        :param np.ndarray op: operator in the model's basis
        :return np.ndarray: V^dagger op V
        """
        op = as_operator(op)
        if op.shape[0] != self.source_dim:
            raise ValueError(
                'Operator dim {} does not match eigensystem dim {}'.format(
                    op.shape[0], self.source_dim))
        return dag(self.vectors) @ op @ self.vectors

    def reconstruct(self):
        """V diag(E) V^dagger"""
        return (self.vectors * self.energies) @ dag(self.vectors)

    def hamiltonian(self):
        """Hamiltonian in the energy basis, diag(E)"""
        return np.diag(self.energies).astype(complex)

    def degenerate_pairs(self, tol):
        """
        Adjacent levels closer than tol

        :param float tol: energy tolerance
        :return list of tuples (i, i + 1)
        """
        gaps = np.diff(self.energies)
        return [(int(i), int(i) + 1) for i in np.flatnonzero(gaps <= tol)]

    def default_deg_tol(self):
        """Bohr frequency grouping tolerance, 1e-8 * max|E|"""
        return 1e-8 * max(float(np.max(np.abs(self.energies))), 1.)


def _fix_phases(vectors, rtol=1e-10):
    """Make the first non-negligible component of each column real positive"""
    vectors = vectors.copy()
    for col in range(vectors.shape[1]):
        column = vectors[:, col]
        magnitudes = np.abs(column)
        idx = np.flatnonzero(magnitudes > rtol * magnitudes.max())[0]
        vectors[:, col] = column * (np.conj(column[idx]) / magnitudes[idx])
    return vectors


def eigh(hamiltonian, rtol=HERMITIAN_RTOL):
    """
    Hermitian eigendecomposition with ascending energies and a deterministic
    phase per eigenvector

    :param np.ndarray hamiltonian: Hermitian matrix
    :param float rtol: Hermiticity tolerance relative to max|H|
    :return EigenSystem es: sorted eigenvalues and orthonormal eigenvectors
    :raise NonHermitianInput: if H isn't Hermitian within rtol
    """
    hamiltonian = as_operator(hamiltonian)
    check_hermitian(hamiltonian, rtol, name='Hamiltonian')
    sym = 0.5 * (hamiltonian + dag(hamiltonian))
    energies, vectors = scipy.linalg.eigh(sym)
    order = np.argsort(energies, kind='stable')
    energies = energies[order]
    vectors = _fix_phases(vectors[:, order])
    return EigenSystem(
        energies=energies,
        vectors=vectors,
        source_dim=hamiltonian.shape[0],
    )


def _state_reduction(rate_matrix):
    """
    Stationary vector of a rate matrix by successive state elimination.
    Uses only off-diagonal rates and no subtractions, so tiny populations
    keep full relative accuracy.

    :param np.ndarray rate_matrix: M[i, j] = rate j -> i for i != j
    :return np.ndarray/None p: normalized stationary vector, None if some
     state can't reach the states eliminated after it
    """
    n = rate_matrix.shape[0]
    # rates[i, j]: rate i -> j
    rates = np.array(rate_matrix.T, dtype=float)
    np.fill_diagonal(rates, 0.)
    if np.any(rates < 0):
        return None
    for k in range(n - 1, 0, -1):
        out_rate = rates[k, :k].sum()
        if not out_rate > 0:
            return None
        rates[:k, k] /= out_rate
        rates[:k, :k] += np.outer(rates[:k, k], rates[k, :k])
    p = np.zeros(n)
    p[0] = 1.
    for k in range(1, n):
        p[k] = p[:k] @ rates[:k, k]
    total = p.sum()
    if not np.isfinite(total) or total <= 0:
        return None
    return p / total


def nullspace(rate_matrix, tol=NULLSPACE_TOL):
    """
    Normalized null vector of a rate-matrix-shaped operator

    Nullity is decided from singular values below tol * s_max. The vector is
    computed by state elimination when M has non-negative off-diagonals,
    otherwise taken from the SVD.

    :param np.ndarray rate_matrix: real square matrix with ~zero column sums
    :param float tol: relative singular value threshold
    :return np.ndarray v: sum(v) = 1, v >= 0
    :raise DegenerateSteadyState: if nullity != 1
    :raise NonPhysical: if a component is below -1e-10 after normalization
    """
    mat = np.asarray(rate_matrix, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError('rate matrix must be square, got {}'.format(mat.shape))
    n = mat.shape[0]
    if n == 1:
        return np.ones(1)
    _, sing_vals, vh = scipy.linalg.svd(mat)
    if sing_vals[0] == 0:
        raise DegenerateSteadyState(
            'rate matrix is zero, nullity {}'.format(n))
    nullity = int(np.sum(sing_vals <= tol * sing_vals[0]))
    if nullity != 1:
        raise DegenerateSteadyState(
            'rate matrix nullity is {} (singular values {})'.format(
                nullity, np.array2string(sing_vals[-max(nullity, 2):],
                                         precision=3)))
    vec = _state_reduction(mat)
    if vec is None:
        vec = vh[-1].real
        vec = vec / vec.sum()
    if vec.min() < -NEGATIVE_CLAMP:
        raise NonPhysical(
            'null vector has negative component {:.3e}'.format(vec.min()))
    vec = np.clip(vec, 0., None)
    return vec / vec.sum()
