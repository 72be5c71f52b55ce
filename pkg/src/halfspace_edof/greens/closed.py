"""
Closed-form half-space Green's function: the source, its quasi-static image and Q complex images

    G = exp(i k0 D1) / (4 pi D1) + exp(i k0 D2) / (4 pi D2) + sum a_n exp(i k0 R_n) / (4 pi R_n),
    R_n^2 = rho^2 + (z_r + z_s + i b_n)^2.
"""
import numpy as np

from ..errors import ExpansionDomainError, SingularEvaluationError
from .abstract import COINCIDENCE_TOLERANCE, AbstractGreens, GreenMode, spherical_wave


def complex_image_distance(rho, z_sum, b_n):
    """sqrt(rho^2 + (z_sum + i b_n)^2) on the root with Re > 0 (Im >= 0 when Re == 0)."""
    rho = np.asarray(rho, dtype=float)
    height = np.asarray(z_sum, dtype=float) + 1j * np.asarray(b_n, dtype=complex)
    distance = np.sqrt(rho * rho + height * height)
    distance = np.where((distance.real == 0) & (distance.imag < 0), -distance, distance)
    if np.any(np.abs(distance) < COINCIDENCE_TOLERANCE):
        raise SingularEvaluationError("complex image distance vanishes")
    if distance.ndim == 0:
        return complex(distance)
    return distance


class ClosedFormGreens(AbstractGreens):

    _MODE = GreenMode.HALF_SPACE_CLOSED

    def __init__(self, ground, expansion):
        if expansion is None:
            raise ValueError("the closed form needs an image expansion")
        super().__init__(ground, expansion)

    def _evaluate(self, pair):
        pair.check_half_space()
        k0 = self.k0
        value = spherical_wave(pair.direct, k0) + spherical_wave(pair.image, k0)
        expansion = self.expansion
        active = expansion.a != 0
        if not np.any(active):
            return value
        a, b = expansion.a[active], expansion.b[active]
        # the image identity needs Re(z_sum + i b_n) > 0 for the evanescent tail to decay
        if np.any(np.min(pair.z_sum) - b.imag <= 0):
            raise ExpansionDomainError(
                f"complex image below the ground: min z_sum={np.min(pair.z_sum):g}, max Im(b)={np.max(b.imag):g}")
        distances = complex_image_distance(pair.rho[..., None], pair.z_sum[..., None], b)
        return value + np.sum(a * spherical_wave(distances, k0), axis=-1)


def g_half_closed(r_r, r_s, evaluator):
    if not isinstance(evaluator, ClosedFormGreens):
        evaluator = ClosedFormGreens(evaluator.ground, evaluator.expansion)
    return evaluator(r_r, r_s)
