import numpy as np

from ..sommerfeld import QuadratureSpec, reflected_integral_oracle
from ..spectral import ContourSpec
from .abstract import AbstractGreens, GreenMode, spherical_wave


class OracleGreens(AbstractGreens):
    """Half-space Green's function with the reflected correction integrated numerically."""

    _MODE = GreenMode.HALF_SPACE_ORACLE

    def __init__(self, ground, contour=None, quad=None, expansion=None):
        super().__init__(ground, expansion)
        self._contour = contour or ContourSpec()
        self._quad = quad or QuadratureSpec()

    @property
    def contour(self):
        return self._contour

    @property
    def quad(self):
        return self._quad

    def reflected(self, rho, z_sum):
        return reflected_integral_oracle(rho, z_sum, self.ground, self._contour, self._quad)

    def _evaluate(self, pair):
        pair.check_half_space()
        k0 = self.k0
        value = spherical_wave(pair.direct, k0) + spherical_wave(pair.image, k0)
        # integrals depend on (rho, z_sum) only; repeated pairs are integrated once
        keys = np.stack([pair.rho.ravel(), pair.z_sum.ravel()], axis=-1)
        unique, inverse = np.unique(keys, axis=0, return_inverse=True)
        reflected = np.array([self.reflected(rho, z_sum) for rho, z_sum in unique], dtype=complex)
        return value + reflected[np.reshape(inverse, -1)].reshape(pair.rho.shape)


def g_half_oracle(r_r, r_s, ground, contour=None, quad=None):
    return OracleGreens(ground, contour, quad)(r_r, r_s)
