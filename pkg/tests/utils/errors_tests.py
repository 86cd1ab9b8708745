import unittest

import qr_diode.utils.errors as errors


class TestErrors(unittest.TestCase):

    def test_hierarchy(self):
        for err_class in (errors.NonHermitianInput,
                          errors.DegenerateSteadyState,
                          errors.SpectralCollapse,
                          errors.TruncationTooSmall,
                          errors.UnknownUnitKind,
                          errors.DomainError,
                          errors.BasisMismatch,
                          errors.NotConverged,
                          errors.NonPhysical,
                          errors.ConfigError):
            self.assertTrue(issubclass(err_class, errors.DiodeError))

    def test_validation_errors(self):
        self.assertIn(errors.ConfigError, errors.VALIDATION_ERRORS)
        self.assertNotIn(errors.NotConverged, errors.VALIDATION_ERRORS)
        self.assertTrue(issubclass(errors.SpectralCollapse, ValueError))

    def test_describe_error(self):
        err = errors.SpectralCollapse('g = 0.6 too large')
        self.assertEqual(errors.describe_error(err),
                         'SpectralCollapse: g = 0.6 too large')
