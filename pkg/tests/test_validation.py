import math
import unittest

from halfspace_edof.config import ScenarioConfig
from halfspace_edof.errors import ConfigurationError
from halfspace_edof.validation import (DEFAULT_TOLERANCES, GRAZING_BOUND, check_convergence, check_dcim,
                                       parse_tolerances, validate)


class DefaultScenarioTestCase(unittest.TestCase):
    """Every self-check passes for the default scenario; the slowest tests in the suite."""

    def test_all_checks_pass(self):
        results = validate(ScenarioConfig())
        self.assertEqual([result.name for result in results],
                         ['identity', 'image_limit', 'dcim', 'prony', 'edof', 'convergence'])
        for result in results:
            with self.subTest(check=result.name):
                self.assertTrue(result.passed, result.line())

    def test_dcim_reports_grazing_row(self):
        error, detail = check_dcim(ScenarioConfig())
        self.assertLessEqual(error, DEFAULT_TOLERANCES['dcim'])
        self.assertIn('grazing row', detail)
        self.assertIn(f"bound {GRAZING_BOUND:g}", detail)


class ConvergenceCheckTestCase(unittest.TestCase):

    def test_unconverged_continuous_edof_fails(self):
        error, detail = check_convergence(ScenarioConfig(line_order=1))
        self.assertTrue(math.isinf(error))
        self.assertIn('on doubling the order', detail)


class ToleranceTestCase(unittest.TestCase):

    def test_named_and_global(self):
        self.assertEqual(parse_tolerances(['dcim=0.5'])['dcim'], 0.5)
        self.assertEqual(parse_tolerances(['dcim=0.5'])['edof'], DEFAULT_TOLERANCES['edof'])
        self.assertEqual(set(parse_tolerances(['1e-20']).values()), {1e-20})

    def test_invalid(self):
        with self.assertRaises(ConfigurationError):
            parse_tolerances(['everything=1'])
        with self.assertRaises(ConfigurationError):
            parse_tolerances(['dcim=tight'])


if __name__ == '__main__':
    unittest.main()
