import math
from enum import Enum
from typing import NamedTuple

import numpy as np

from ..errors import GeometryError, SingularEvaluationError

COINCIDENCE_TOLERANCE = 1e-9


class GreenMode(Enum):
    FREE_SPACE = 'free_space'
    HALF_SPACE_CLOSED = 'half_space_closed'
    HALF_SPACE_ORACLE = 'half_space_oracle'


class Point3(NamedTuple):
    x: float
    y: float
    z: float


def mirror(point):
    """Image of a point in the ground plane z = 0."""
    point = np.asarray(point, dtype=float)
    return point * np.array([1.0, 1.0, -1.0])


class PairGeometry:
    """Broadcast pairwise quantities between receiver and source positions of shape (..., 3)."""

    def __init__(self, r_r, r_s):
        r_r = np.asarray(r_r, dtype=float)
        r_s = np.asarray(r_s, dtype=float)
        if r_r.shape[-1:] != (3,) or r_s.shape[-1:] != (3,):
            raise GeometryError("positions must have a trailing axis of length 3")
        self.z_r = r_r[..., 2]
        self.z_s = r_s[..., 2]
        self.rho = np.hypot(r_r[..., 0] - r_s[..., 0], r_r[..., 1] - r_s[..., 1])
        self.z_sum = self.z_r + self.z_s
        self.direct = np.sqrt(self.rho ** 2 + (self.z_r - self.z_s) ** 2)
        self.rho, self.z_sum, self.direct = np.broadcast_arrays(self.rho, self.z_sum, self.direct)

    @property
    def image(self):
        return np.sqrt(self.rho ** 2 + self.z_sum ** 2)

    def check_direct(self):
        if np.any(self.direct < COINCIDENCE_TOLERANCE):
            raise SingularEvaluationError("Green's function evaluated at coincident points")

    def check_half_space(self):
        if np.any(self.z_r < 0) or np.any(self.z_s < 0):
            raise GeometryError("sources and receivers must lie in the half space z >= 0")
        if np.any(self.image < COINCIDENCE_TOLERANCE):
            raise SingularEvaluationError("receiver coincides with the mirror image of the source")


def spherical_wave(distance, k0):
    """exp(i k0 D) / (4 pi D), also for complex D."""
    return np.exp(1j * k0 * distance) / (4 * math.pi * distance)


def _as_output(value):
    value = np.asarray(value)
    if value.ndim == 0:
        return complex(value)
    return value


def g_free(r_r, r_s, k0):
    pair = PairGeometry(r_r, r_s)
    pair.check_direct()
    return _as_output(spherical_wave(pair.direct, k0))


class AbstractGreens:
    """
    Scalar Green's function G(r_r, r_s) for one ground and wavelength.

    Instances are immutable and evaluate broadcast arrays of positions: ``green(r_r, r_s)`` with
    shapes (..., 3) returns the broadcast (...) array of values.
    """

    _MODE = None

    def __init__(self, ground, expansion=None):
        if expansion is not None and not math.isclose(expansion.k0, ground.k0, rel_tol=1e-12):
            raise ValueError(f"image expansion was fitted for k0={expansion.k0}, ground has k0={ground.k0}")
        self._ground = ground
        self._expansion = expansion

    @property
    def ground(self):
        return self._ground

    @property
    def expansion(self):
        return self._expansion

    @property
    def mode(self):
        return self._MODE

    @property
    def k0(self):
        return self._ground.k0

    def __call__(self, r_r, r_s):
        pair = PairGeometry(r_r, r_s)
        pair.check_direct()
        return _as_output(self._evaluate(pair))

    def _evaluate(self, pair):
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}(wavelength={self._ground.wavelength}, beta={self._ground.beta})"
