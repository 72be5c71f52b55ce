"""
Qualitative claims about the EDoF curves of the default scenario family: antenna-number sweep,
distance sweep and receiver-height sweep, in half space against free space.
"""
import unittest

from halfspace_edof.channel import build_channel_matrix, edof_discrete
from halfspace_edof.config import ScenarioConfig
from halfspace_edof.greens import create_evaluator


def discrete_edof(config):
    """Discrete EDoF of ``config`` in half space and in free space."""
    ground = config.ground()
    link = config.link()
    half = create_evaluator('half', ground, config.contour())
    free = create_evaluator('free', ground)
    return (edof_discrete(build_channel_matrix(link, config.N, config.M, half)),
            edof_discrete(build_channel_matrix(link, config.N, config.M, free)))


class AntennaNumberTestCase(unittest.TestCase):

    def test_interior_maximum(self):
        config = ScenarioConfig()
        ground = config.ground()
        link = config.link()
        half = create_evaluator('half', ground, config.contour())
        curve = {m: edof_discrete(build_channel_matrix(link, m, m, half)) for m in range(2, 201)}
        best = max(curve, key=curve.get)
        self.assertGreater(best, 2)
        self.assertLess(best, 200)
        self.assertLess(curve[200], curve[best])


class DistanceTestCase(unittest.TestCase):

    def test_edof_drops_with_distance(self):
        near = discrete_edof(ScenarioConfig(rho=5.0))[0]
        far = discrete_edof(ScenarioConfig(rho=30.0))[0]
        self.assertGreater(near, far)

    def test_ground_effect_fades_with_distance(self):
        def gap(rho):
            half, free = discrete_edof(ScenarioConfig(rho=rho))
            return abs(half - free) / free

        self.assertLessEqual(gap(50.0), gap(10.0) / 3)


class HeightTestCase(unittest.TestCase):

    def test_ground_effect_fades_with_source_height(self):
        low = discrete_edof(ScenarioConfig(z_s=10.0))
        high = discrete_edof(ScenarioConfig(z_s=50.0))
        self.assertGreater(abs(low[0] - low[1]), abs(high[0] - high[1]))

    def test_half_space_below_free_space(self):
        for z_r in (1.0, 2.0, 5.0, 10.0, 20.0):
            with self.subTest(z_r=z_r):
                half, free = discrete_edof(ScenarioConfig(rho=25.0, z_r=z_r))
                self.assertLessEqual(half, free * (1 + 1e-6))


if __name__ == '__main__':
    unittest.main()
