import math
import unittest

import numpy as np

from halfspace_edof.errors import ConfigurationError, ExpansionDomainError, GeometryError, SingularEvaluationError
from halfspace_edof.greens import (ClosedFormGreens, FreeSpaceGreens, GreenMode, OracleGreens, complex_image_distance,
                                   create_evaluator, g_free, g_half_closed, g_half_oracle, mirror, parse_mode)
from halfspace_edof.prony import ImageExpansion, fit_image_expansion
from halfspace_edof.sommerfeld import QuadratureSpec
from halfspace_edof.spectral import ContourSpec, GroundModel

WAVELENGTH = 0.1
K0 = 2 * math.pi / WAVELENGTH


class FreeSpaceTestCase(unittest.TestCase):

    def test_one_wavelength(self):
        np.testing.assert_allclose(g_free((0, 0, WAVELENGTH), (0, 0, 0), K0), 1 / (4 * math.pi * WAVELENGTH),
                                   rtol=1e-12)

    def test_modulus_and_symmetry(self):
        rng = np.random.default_rng(3)
        r_r = rng.uniform(-10, 10, size=(8, 3))
        r_s = rng.uniform(-10, 10, size=(8, 3))
        distance = np.linalg.norm(r_r - r_s, axis=-1)
        np.testing.assert_allclose(np.abs(g_free(r_r, r_s, K0)), 1 / (4 * math.pi * distance), rtol=1e-13)
        np.testing.assert_array_equal(g_free(r_r, r_s, K0), g_free(r_s, r_r, K0))

    def test_coincident_points(self):
        with self.assertRaises(SingularEvaluationError):
            g_free((1, 2, 3), (1, 2, 3), K0)


class ComplexImageDistanceTestCase(unittest.TestCase):

    def test_real_cases(self):
        self.assertAlmostEqual(complex_image_distance(3, 4, 0), 5)
        self.assertAlmostEqual(complex_image_distance(0, 2, 0), 2)

    def test_complex_root(self):
        b_n = -0.3 + 0.2j
        distance = complex_image_distance(1.0, 1.0, b_n)
        self.assertGreater(distance.real, 0)
        np.testing.assert_allclose(distance ** 2, 1 + (1 + 1j * b_n) ** 2, rtol=1e-12)

    def test_vanishing_distance(self):
        with self.assertRaises(SingularEvaluationError):
            complex_image_distance(0.0, 0.0, 0.0)


class ClosedFormTestCase(unittest.TestCase):

    def setUp(self):
        self.ground = GroundModel.from_impedance(WAVELENGTH, 0.3 - 0.1j)
        self.green = create_evaluator('half', self.ground)
        self.rng = np.random.default_rng(4)

    def test_perfect_image_limit(self):
        ground = GroundModel.from_impedance(WAVELENGTH, math.inf)
        green = ClosedFormGreens(ground, ImageExpansion.zero(5, ground.k0, ground))
        r_r = self.rng.uniform([-20, -20, 0.1], [20, 20, 20], size=(20, 3))
        r_s = self.rng.uniform([-20, -20, 0.1], [20, 20, 20], size=(20, 3))
        expected = g_free(r_r, r_s, K0) + g_free(r_r, mirror(r_s), K0)
        np.testing.assert_allclose(g_half_closed(r_r, r_s, green), expected, rtol=1e-10)

    def test_reciprocity(self):
        r_r = self.rng.uniform([-20, -20, 0.5], [20, 20, 20], size=(10, 3))
        r_s = self.rng.uniform([-20, -20, 0.5], [20, 20, 20], size=(10, 3))
        np.testing.assert_allclose(self.green(r_r, r_s), self.green(r_s, r_r), rtol=1e-12)

    def test_broadcasting(self):
        receivers = np.array([[10.0, y, 1.0] for y in np.linspace(-2, 2, 4)])
        sources = np.array([[0.0, y, 10.0] for y in np.linspace(-6, 6, 3)])
        table = self.green(receivers[:, None, :], sources[None, :, :])
        self.assertEqual(table.shape, (4, 3))
        np.testing.assert_allclose(table[2, 1], self.green(receivers[2], sources[1]), rtol=1e-15)

    def test_scalar_output(self):
        self.assertIsInstance(self.green((10, 0, 1), (0, 0, 10)), complex)

    def test_below_ground(self):
        with self.assertRaises(GeometryError):
            self.green((10, 0, -1), (0, 0, 10))

    def test_coincident_with_mirror(self):
        with self.assertRaises(SingularEvaluationError):
            self.green((1, 1, 0), (1, 1, 0))

    def test_image_below_ground(self):
        expansion = ImageExpansion([0.1], [5j], self.ground.k0, self.ground)
        green = ClosedFormGreens(self.ground, expansion)
        with self.assertRaises(ExpansionDomainError):
            green((3, 0, 1), (0, 0, 1))

    def test_wavenumber_mismatch(self):
        expansion = ImageExpansion.zero(5, 2 * self.ground.k0)
        with self.assertRaises(ValueError):
            ClosedFormGreens(self.ground, expansion)

    def test_free_space_dominance_at_height(self):
        deviations = []
        for height in (5.0, 20.0, 50.0):
            r_r, r_s = (10.0, 0.0, height), (0.0, 0.0, height)
            free = g_free(r_r, r_s, K0)
            deviations.append(abs(self.green(r_r, r_s) - free) / abs(free))
        self.assertGreater(deviations[0], deviations[1])
        self.assertGreater(deviations[1], deviations[2])


class FactoryTestCase(unittest.TestCase):

    def setUp(self):
        self.ground = GroundModel.from_impedance(WAVELENGTH, 0.3 - 0.1j)

    def test_modes(self):
        self.assertIsInstance(create_evaluator('free', self.ground), FreeSpaceGreens)
        self.assertIsInstance(create_evaluator(GreenMode.HALF_SPACE_CLOSED, self.ground), ClosedFormGreens)
        self.assertIsInstance(create_evaluator('half_space_oracle', self.ground), OracleGreens)
        self.assertIs(create_evaluator('closed', self.ground).mode, GreenMode.HALF_SPACE_CLOSED)

    def test_invalid_mode(self):
        with self.assertRaises(ConfigurationError):
            parse_mode('vacuum')

    def test_free_space_evaluator(self):
        green = create_evaluator('free', self.ground)
        np.testing.assert_allclose(green((3, 4, 1), (0, 0, 1)), g_free((3, 4, 1), (0, 0, 1), K0), rtol=1e-15)


class OracleTestCase(unittest.TestCase):

    def setUp(self):
        self.ground = GroundModel.from_impedance(WAVELENGTH, 0.3 - 0.1j)
        self.contour = ContourSpec()
        self.expansion = fit_image_expansion(self.ground, self.contour)[1]

    def test_perfect_image(self):
        ground = GroundModel.from_impedance(WAVELENGTH, math.inf)
        r_r, r_s = (10.0, 1.0, 5.0), (0.0, 0.0, 5.0)
        expected = g_free(r_r, r_s, K0) + g_free(r_r, mirror(r_s), K0)
        np.testing.assert_allclose(g_half_oracle(r_r, r_s, ground), expected, rtol=1e-12)

    def test_default_geometry(self):
        r_r, r_s = (10.0, 0.0, 5.0), (0.0, 0.0, 5.0)
        closed = ClosedFormGreens(self.ground, self.expansion)(r_r, r_s)
        oracle = g_half_oracle(r_r, r_s, self.ground, self.contour)
        self.assertLessEqual(abs(closed - oracle) / abs(oracle), 1e-2)

    def test_self_convergence(self):
        r_r, r_s = (10.0, 0.0, 5.0), (0.0, 0.0, 5.0)
        coarse = g_half_oracle(r_r, r_s, self.ground, self.contour, QuadratureSpec(panel_nodes=32))
        fine = g_half_oracle(r_r, r_s, self.ground, self.contour, QuadratureSpec(panel_nodes=64))
        self.assertLess(abs(fine - coarse) / abs(fine), 1e-8)

    def test_reciprocity(self):
        oracle = OracleGreens(self.ground, self.contour)
        np.testing.assert_allclose(oracle((7.0, 2.0, 3.0), (0.0, 0.0, 4.0)),
                                   oracle((0.0, 0.0, 4.0), (7.0, 2.0, 3.0)), rtol=1e-8)

    def test_up_down_asymmetry(self):
        oracle = OracleGreens(self.ground, self.contour)
        source = np.array([0.0, 0.0, 5.0])
        values = oracle(np.array([[10.0, 1.0, 2.0], [10.0, 1.0, 8.0], [10.0, 1.0, 2.0]]), source)
        self.assertTrue(np.all(np.isfinite(values)))
        self.assertEqual(values[0], values[2])
        self.assertGreater(abs(values[0] - values[1]) / abs(values[1]), 1e-3)


class OracleAgreementTestCase(unittest.TestCase):
    """Closed form against the quadrature over the (rho, z_sum) grid; the slowest tests here."""

    def setUp(self):
        self.ground = GroundModel.from_impedance(WAVELENGTH, 0.3 - 0.1j)

    def _errors(self, contour, rhos, z_sums):
        expansion = fit_image_expansion(self.ground, contour)[1]
        closed = ClosedFormGreens(self.ground, expansion)
        oracle = OracleGreens(self.ground, contour)
        errors = {}
        for rho in rhos:
            for z_sum in z_sums:
                r_r, r_s = (rho, 0.0, 0.5 * z_sum), (0.0, 0.0, 0.5 * z_sum)
                reference = oracle(r_r, r_s)
                errors[rho, z_sum] = abs(closed(r_r, r_s) - reference) / abs(reference)
        return errors

    def test_grid(self):
        errors = self._errors(ContourSpec(10.0, 10, 5), (1.0, 2.0, 5.0, 10.0, 20.0, 50.0),
                              (6.0, 11.0, 20.0, 40.0, 60.0))
        for (rho, z_sum), error in errors.items():
            with self.subTest(rho=rho, z_sum=z_sum):
                self.assertLessEqual(error, 1e-2)

    def test_grazing_row(self):
        errors = self._errors(ContourSpec(10.0, 10, 5), (1.0, 2.0, 5.0, 10.0, 20.0, 50.0), (2.0,))
        for (rho, _), error in errors.items():
            with self.subTest(rho=rho):
                self.assertLessEqual(error, 5e-2)
        # the few-percent error sits at intermediate distances
        self.assertGreater(errors[20.0, 2.0], 1e-2)
        self.assertLess(errors[5.0, 2.0], 1e-2)
        self.assertLess(errors[50.0, 2.0], 1e-2)

    def test_denser_sampling_near_grazing(self):
        errors = self._errors(ContourSpec(10.0, 20, 5), (10.0, 20.0), (2.0,))
        for (rho, _), error in errors.items():
            with self.subTest(rho=rho):
                self.assertLessEqual(error, 1e-2)


if __name__ == '__main__':
    unittest.main()
