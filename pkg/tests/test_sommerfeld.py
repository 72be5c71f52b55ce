import math
import unittest

import numpy as np

from halfspace_edof.errors import AccuracyError, ConfigurationError
from halfspace_edof.sommerfeld import (QuadratureSpec, reflected_integral_oracle, spectral_integral,
                                       sommerfeld_identity_lhs, sommerfeld_identity_rhs)
from halfspace_edof.spectral import ContourSpec, GroundModel


class SommerfeldIdentityTestCase(unittest.TestCase):

    def setUp(self):
        self.k0 = 2 * math.pi / 0.1

    def test_identity_grid(self):
        grid = np.linspace(0.1, 5.0, 5)
        for rho in grid:
            for zeta in grid:
                with self.subTest(rho=rho, zeta=zeta):
                    np.testing.assert_allclose(sommerfeld_identity_rhs(rho, zeta, self.k0),
                                               sommerfeld_identity_lhs(rho, zeta, self.k0), rtol=1e-6)

    def test_on_axis(self):
        np.testing.assert_allclose(sommerfeld_identity_rhs(0.0, 1.3, self.k0),
                                   np.exp(1.3j * self.k0) / 1.3, rtol=1e-6)

    def test_zeta_must_be_positive(self):
        with self.assertRaises(ValueError):
            sommerfeld_identity_rhs(1.0, 0.0, self.k0)
        with self.assertRaises(ValueError):
            sommerfeld_identity_rhs(-1.0, 1.0, self.k0)

    def test_tail_budget_exhausted(self):
        quad = QuadratureSpec(max_tail_panels=1)
        with self.assertRaises(AccuracyError) as context:
            spectral_integral(1.0, 0.1, self.k0, np.ones_like, quad)
        self.assertIsNotNone(context.exception.estimate)


class ReflectedIntegralTestCase(unittest.TestCase):

    def test_perfect_image_has_no_correction(self):
        ground = GroundModel.from_impedance(0.1, math.inf)
        self.assertEqual(reflected_integral_oracle(10.0, 6.0, ground, ContourSpec()), 0j)

    def test_correction_is_finite(self):
        ground = GroundModel.from_impedance(0.1, 0.3 - 0.1j)
        value = reflected_integral_oracle(10.0, 10.0, ground, ContourSpec())
        self.assertTrue(np.isfinite(value))
        self.assertNotEqual(value, 0)

    def test_pinned_value(self):
        ground = GroundModel.from_impedance(0.1, 0.3 - 0.1j)
        value = reflected_integral_oracle(10.0, 11.0, ground, ContourSpec())
        np.testing.assert_allclose(value, 0.004199345413213097 + 0.007670175640317723j, rtol=1e-8)

    def test_doubling_panel_nodes(self):
        ground = GroundModel.from_impedance(0.1, 0.3 - 0.1j)
        coarse = reflected_integral_oracle(10.0, 11.0, ground, ContourSpec(), QuadratureSpec(panel_nodes=32))
        fine = reflected_integral_oracle(10.0, 11.0, ground, ContourSpec(), QuadratureSpec(panel_nodes=64))
        self.assertLess(abs(fine - coarse) / abs(fine), 1e-8)

    def test_tail_truncation_bound(self):
        ground = GroundModel.from_impedance(0.1, 0.3 - 0.1j)
        loose = reflected_integral_oracle(10.0, 11.0, ground, ContourSpec(), QuadratureSpec(tail_rel_tol=1e-5))
        tight = reflected_integral_oracle(10.0, 11.0, ground, ContourSpec(), QuadratureSpec(tail_rel_tol=1e-13))
        self.assertLessEqual(abs(loose - tight), 1e-5 * abs(tight))

    def test_continuous_in_rho(self):
        # spans the switch between the deformed path and the real axis near rho = 2.67
        ground = GroundModel.from_impedance(0.1, 0.3 - 0.1j)
        step = 1e-4
        for rho in (0.5, 2.5, 2.6, 2.65, 2.7, 2.8, 10.0):
            with self.subTest(rho=rho):
                here = reflected_integral_oracle(rho, 11.0, ground, ContourSpec())
                there = reflected_integral_oracle(rho + step, 11.0, ground, ContourSpec())
                self.assertLessEqual(abs(there - here), 2 * ground.k0 * step * abs(here))

    def test_z_sum_must_be_positive(self):
        ground = GroundModel.from_impedance(0.1, 0.3 - 0.1j)
        with self.assertRaises(ValueError):
            reflected_integral_oracle(1.0, 0.0, ground, ContourSpec())


class QuadratureSpecTestCase(unittest.TestCase):

    def test_validation(self):
        with self.assertRaises(ConfigurationError):
            QuadratureSpec(panel_nodes=2)
        with self.assertRaises(ConfigurationError):
            QuadratureSpec(tail_rel_tol=0.1)
        with self.assertRaises(ConfigurationError):
            QuadratureSpec(path_panels=0)


if __name__ == '__main__':
    unittest.main()
