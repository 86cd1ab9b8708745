import numpy as np
import numpy.testing
import unittest

import qr_diode.numerics.linalg as linalg
from qr_diode.numerics.integrate import propagate_linear
from qr_diode.utils.errors import (
    DegenerateSteadyState,
    NonHermitianInput,
    NonPhysical,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)


def random_hermitian(rng, dim):
    mat = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return mat + mat.conj().T


class TestKron(unittest.TestCase):

    def test_identities(self):
        result = linalg.kron(np.eye(2), np.eye(3))
        numpy.testing.assert_array_equal(result, np.eye(6))

    def test_sigma_x_identity(self):
        result = linalg.kron(SIGMA_X, np.eye(2))
        numpy.testing.assert_array_equal(np.diag(result), np.zeros(4))
        expected = np.zeros((4, 4))
        expected[0, 2] = expected[1, 3] = expected[2, 0] = expected[3, 1] = 1
        numpy.testing.assert_array_equal(result, expected)

    def test_index_convention(self):
        a = np.arange(4).reshape(2, 2)
        b = np.arange(9).reshape(3, 3) + 1.
        result = linalg.kron(a, b)
        self.assertEqual(result.shape, (6, 6))
        for i, j, k, l in [(0, 1, 2, 0), (1, 0, 1, 2), (1, 1, 0, 0)]:
            self.assertEqual(result[i * 3 + k, j * 3 + l], a[i, j] * b[k, l])

    def test_mixed_product(self):
        rng = np.random.default_rng(3)
        a, c = rng.normal(size=(2, 2, 2))
        b, d = rng.normal(size=(2, 3, 3))
        numpy.testing.assert_allclose(
            linalg.kron(a, b) @ linalg.kron(c, d),
            linalg.kron(a @ c, b @ d),
            atol=1e-12,
        )

    def test_associative(self):
        rng = np.random.default_rng(4)
        a = rng.normal(size=(2, 2))
        b = rng.normal(size=(3, 3))
        c = rng.normal(size=(2, 2))
        numpy.testing.assert_allclose(
            linalg.kron(linalg.kron(a, b), c),
            linalg.kron(a, linalg.kron(b, c)),
            atol=1e-12,
        )
        numpy.testing.assert_allclose(
            linalg.kron(a, b, c),
            linalg.kron(a, linalg.kron(b, c)),
            atol=1e-12,
        )

    def test_not_square(self):
        with self.assertRaises(ValueError):
            linalg.kron(np.ones((2, 3)), np.eye(2))


class TestEigh(unittest.TestCase):

    def test_pauli_spectrum(self):
        es = linalg.eigh(SIGMA_X)
        numpy.testing.assert_allclose(es.energies, [-1, 1], atol=1e-14)
        self.assertEqual(es.source_dim, 2)
        self.assertEqual(es.dim, 2)

    def test_number_operator(self):
        omega_L = 1.3
        num = np.diag(np.arange(6)) * omega_L
        es = linalg.eigh(num)
        numpy.testing.assert_allclose(
            es.energies, omega_L * np.arange(6), atol=1e-13)

    def test_non_hermitian(self):
        mat = np.array([[0, 1], [0.5, 0]])
        with self.assertRaises(NonHermitianInput):
            linalg.eigh(mat)

    def test_reconstruction_and_orthonormality(self):
        rng = np.random.default_rng(7)
        for dim in (2, 17, 64, 128):
            with self.subTest(dim=dim):
                ham = random_hermitian(rng, dim)
                es = linalg.eigh(ham)
                self.assertTrue(np.all(np.diff(es.energies) >= 0))
                overlap = es.vectors.conj().T @ es.vectors
                numpy.testing.assert_allclose(
                    overlap, np.eye(dim), atol=1e-10)
                err = np.max(np.abs(es.reconstruct() - ham))
                self.assertLessEqual(err, 1e-10 * np.max(np.abs(ham)))

    def test_phase_convention(self):
        rng = np.random.default_rng(11)
        es = linalg.eigh(random_hermitian(rng, 8))
        for col in range(8):
            column = es.vectors[:, col]
            idx = np.flatnonzero(np.abs(column) > 1e-10)[0]
            self.assertGreater(column[idx].real, 0)
            self.assertAlmostEqual(column[idx].imag, 0, places=12)

    def test_deterministic(self):
        rng = np.random.default_rng(12)
        ham = random_hermitian(rng, 10)
        es1 = linalg.eigh(ham)
        es2 = linalg.eigh(ham.copy())
        numpy.testing.assert_array_equal(es1.energies, es2.energies)
        numpy.testing.assert_array_equal(es1.vectors, es2.vectors)

    def test_energy_basis_round_trip(self):
        rng = np.random.default_rng(13)
        ham = random_hermitian(rng, 6)
        es = linalg.eigh(ham)
        numpy.testing.assert_allclose(
            es.to_energy_basis(ham), np.diag(es.energies), atol=1e-12)
        op = random_hermitian(rng, 6)
        in_energy_basis = es.to_energy_basis(op)
        numpy.testing.assert_allclose(
            es.vectors @ in_energy_basis @ es.vectors.conj().T,
            op,
            atol=1e-12,
        )

    def test_dim_mismatch(self):
        es = linalg.eigh(SIGMA_X)
        with self.assertRaises(ValueError):
            es.to_energy_basis(np.eye(3))

    def test_degenerate_pairs(self):
        es = linalg.eigh(np.diag([0., 1., 1., 2.]))
        self.assertListEqual(es.degenerate_pairs(1e-8), [(1, 2)])


class TestDensityMatrix(unittest.TestCase):

    def test_valid(self):
        linalg.check_density_matrix(np.diag([0.25, 0.75]))

    def test_trace(self):
        with self.assertRaises(NonPhysical):
            linalg.check_density_matrix(np.diag([0.5, 0.6]))

    def test_negative(self):
        with self.assertRaises(NonPhysical):
            linalg.check_density_matrix(np.array([[0.5, 0.9], [0.9, 0.5]]))


class TestNullspace(unittest.TestCase):

    def test_two_state(self):
        a, b = 2., 3.
        mat = np.array([[-a, b], [a, -b]])
        numpy.testing.assert_allclose(
            linalg.nullspace(mat), [0.6, 0.4], rtol=1e-14)

    def test_zero_matrix(self):
        with self.assertRaises(DegenerateSteadyState):
            linalg.nullspace(np.zeros((2, 2)))

    def test_disconnected_blocks(self):
        mat = np.zeros((4, 4))
        mat[:2, :2] = [[-1, 2], [1, -2]]
        mat[2:, 2:] = [[-1, 1], [1, -1]]
        with self.assertRaises(DegenerateSteadyState):
            linalg.nullspace(mat)

    def test_cycle_vs_propagation(self):
        # rates 0 -> 1 -> 2 -> 0
        rates = {(1, 0): 1., (2, 1): 2., (0, 2): 3.}
        mat = np.zeros((3, 3))
        for (i, j), rate in rates.items():
            mat[i, j] += rate
            mat[j, j] -= rate
        vec = linalg.nullspace(mat)
        numpy.testing.assert_allclose(vec, np.array([6, 3, 2]) / 11, rtol=1e-13)
        # long time propagation, t = 1e3 / min rate
        _, states = propagate_linear(
            mat, np.array([1., 0, 0]), dt=0.01, n_steps=100000, n_samples=10)
        numpy.testing.assert_allclose(states[-1], vec, atol=1e-10)

    def test_scaling_invariance(self):
        rng = np.random.default_rng(5)
        mat = rng.uniform(0.1, 2, size=(5, 5))
        np.fill_diagonal(mat, 0)
        mat -= np.diag(mat.sum(axis=0))
        vec = linalg.nullspace(mat)
        self.assertLessEqual(np.linalg.norm(mat @ vec), 1e-12)
        self.assertAlmostEqual(vec.sum(), 1., places=14)
        for scale in (1e-4, 0.1, 10., 1e3):
            numpy.testing.assert_allclose(
                linalg.nullspace(scale * mat), vec, atol=1e-10)

    def test_tiny_populations(self):
        # Gibbs ladder spanning many decades keeps relative accuracy
        energies = np.arange(8.)
        temp = 0.1
        mat = np.zeros((8, 8))
        for k in range(7):
            down = 1.
            up = np.exp(-(energies[k + 1] - energies[k]) / temp)
            mat[k, k + 1] += down
            mat[k + 1, k + 1] -= down
            mat[k + 1, k] += up
            mat[k, k] -= up
        vec = linalg.nullspace(mat)
        gibbs = np.exp(-energies / temp)
        gibbs /= gibbs.sum()
        numpy.testing.assert_allclose(vec, gibbs, rtol=1e-10)

    def test_single_state(self):
        numpy.testing.assert_array_equal(
            linalg.nullspace(np.zeros((1, 1))), [1.])
