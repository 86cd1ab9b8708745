import numpy as np
import numpy.testing
import unittest

import qr_diode.models.operators as ops
import qr_diode.models.two_qubit as two_qubit
from qr_diode.numerics.linalg import commutator, eigh, kron
from qr_diode.utils.errors import DomainError


class TestTwoQubitModels(unittest.TestCase):

    def test_ising_decoupled_spectrum(self):
        params = two_qubit.TwoQubitParams(1., 0.3, 0., kind='ising_zz')
        model = two_qubit.build_comparison_model(params)
        self.assertEqual(model.dim, 4)
        es = eigh(model.hamiltonian)
        numpy.testing.assert_allclose(
            es.energies, [-0.65, -0.35, 0.35, 0.65], atol=1e-14)

    def test_ising_coupling(self):
        params = two_qubit.TwoQubitParams(1., 0.3, 0.2, kind='ising_zz')
        ham = two_qubit.build_comparison_model(params).hamiltonian
        # |ee>: 1/2 (1 + 0.3 + 0.2)
        self.assertAlmostEqual(ham[0, 0].real, 0.75, places=14)
        numpy.testing.assert_allclose(ham, np.diag(np.diag(ham)), atol=0)

    def test_dm_spectrum(self):
        params = two_qubit.TwoQubitParams(1., 1., 0.1, kind='dm')
        model = two_qubit.build_comparison_model(params)
        es = eigh(model.hamiltonian)
        numpy.testing.assert_allclose(
            es.energies, [-1., -0.2, 0.2, 1.], atol=1e-12)
        # single excitation block {{0, 2ig}, {-2ig, 0}}
        self.assertAlmostEqual(model.hamiltonian[1, 2], 0.2j, places=14)

    def test_zx_conserves_left_sz(self):
        params = two_qubit.TwoQubitParams(1., 0.7, 0.3, kind='asymmetric_zx')
        model = two_qubit.build_comparison_model(params)
        sz_l = kron(ops.sigma_z(), ops.identity(2))
        comm = commutator(model.hamiltonian, sz_l)
        numpy.testing.assert_array_equal(comm, np.zeros((4, 4)))

    def test_jump_operators(self):
        params = two_qubit.TwoQubitParams(1., 0.5, 0.1, kind='dm')
        model = two_qubit.build_comparison_model(params)
        numpy.testing.assert_array_equal(
            model.jump_ops['L'], kron(ops.sigma_x(), ops.identity(2)))
        numpy.testing.assert_array_equal(
            model.jump_ops['R'], kron(ops.identity(2), ops.sigma_x()))

    def test_validation(self):
        with self.assertRaises(DomainError):
            two_qubit.TwoQubitParams(1., 1., 0.1, kind='heisenberg')
        with self.assertRaises(DomainError):
            two_qubit.TwoQubitParams(0., 1., 0.1)
        with self.assertRaises(DomainError):
            two_qubit.TwoQubitParams(1., 1., -0.1)
