"""
Reflection coefficient of the impedance ground, branch rules for the vertical wavenumber and the
deformed integration contour k_z = k0 [i xi + (1 - xi / T)], 0 <= xi <= T.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, SingularEvaluationError

_POLE_CLEARANCE = 1e-6
_SINGULAR_DENOMINATOR = 1e-12


@dataclass(frozen=True)
class GroundModel:
    """The impedance ground. ``beta`` is canonical; ``eta`` is derived from it."""

    wavelength: float
    beta: complex
    k0: float = field(init=False)

    def __post_init__(self):
        if not self.wavelength > 0:
            raise ConfigurationError(f"wavelength must be positive, got {self.wavelength}")
        beta = complex(self.beta)
        if not np.isfinite(beta):
            raise ConfigurationError(f"admittance must be finite, got {beta}")
        if beta.real < 0:
            raise ConfigurationError(f"ground must be passive (Re(beta) >= 0), got beta={beta}")
        object.__setattr__(self, 'beta', beta)
        object.__setattr__(self, 'k0', 2 * math.pi / self.wavelength)

    @classmethod
    def from_impedance(cls, wavelength, eta):
        eta = complex(eta)
        if math.isinf(abs(eta)):
            return cls(wavelength, 0j)
        if eta == 0:
            raise ConfigurationError("surface impedance must be nonzero")
        return cls(wavelength, 1 / eta)

    @property
    def eta(self):
        # beta == 0 is the hard ground: infinite impedance
        if self.beta == 0:
            return complex(math.inf, 0)
        return 1 / self.beta

    @property
    def is_perfect_image(self):
        return self.beta == 0


@dataclass(frozen=True)
class ContourSpec:
    T: float = 10.0
    W: int = 10
    Q: int = 5

    def __post_init__(self):
        if not self.T > 0:
            raise ConfigurationError(f"contour parameter T must be positive, got {self.T}")
        if int(self.W) != self.W or int(self.Q) != self.Q or self.W < 1 or self.Q < 1:
            raise ConfigurationError(f"W and Q must be positive integers, got W={self.W}, Q={self.Q}")
        if self.W < 2 * self.Q:
            raise ConfigurationError(f"need W >= 2Q, got W={self.W}, Q={self.Q}")
        object.__setattr__(self, 'W', int(self.W))
        object.__setattr__(self, 'Q', int(self.Q))

    @property
    def sample_points(self):
        return self.T * np.arange(1, self.W + 1) / self.W


def _as_output(value):
    value = np.asarray(value)
    if value.ndim == 0:
        return complex(value)
    return value


def kz_from_k(k, k0):
    """sqrt(k0^2 - k^2) on the branch with Im >= 0 (real and positive below k0)."""
    k = np.asarray(k, dtype=complex)
    kz = np.sqrt(k0 * k0 - k * k)
    kz = np.where(kz.imag < 0, -kz, kz)
    return _as_output(kz)


def k_from_kz(kz, k0):
    """sqrt(k0^2 - kz^2) with Re >= 0, and Im >= 0 when Re == 0."""
    kz = np.asarray(kz, dtype=complex)
    k = np.sqrt(k0 * k0 - kz * kz)
    k = np.where((k.real == 0) & (k.imag < 0), -k, k)
    return _as_output(k)


def kz_on_path(xi, k0, T):
    xi = np.asarray(xi, dtype=float)
    if np.any(xi < 0) or np.any(xi > T):
        raise ValueError(f"path parameter must lie in [0, {T}]")
    return _as_output(k0 * (1j * xi + (1 - xi / T)))


def path_derivative(k0, T):
    """dk_z / dxi along the deformed path."""
    return k0 * (1j - 1 / T)


def xi_from_kz(kz, k0, T):
    """Inverse of ``kz_on_path``, continued analytically off the path."""
    kz = np.asarray(kz, dtype=complex)
    return _as_output((k0 - kz) * T / (k0 * (1 - 1j * T)))


def reflection_coefficient(kz, k0, beta):
    kz = np.asarray(kz, dtype=complex)
    denominator = kz + k0 * beta
    if np.any(np.abs(denominator) <= _SINGULAR_DENOMINATOR * k0):
        raise SingularEvaluationError(f"reflection coefficient pole hit at kz = {-k0 * beta}")
    return _as_output((kz - k0 * beta) / denominator)


def reflection_deviation(kz, k0, beta):
    """C(k) - 1 in the well-conditioned form -2 k0 beta / (kz + k0 beta)."""
    kz = np.asarray(kz, dtype=complex)
    if beta == 0:
        return _as_output(np.zeros_like(kz))
    denominator = kz + k0 * beta
    if np.any(np.abs(denominator) <= _SINGULAR_DENOMINATOR * k0):
        raise SingularEvaluationError(f"reflection coefficient pole hit at kz = {-k0 * beta}")
    return _as_output(-2 * k0 * beta / denominator)


def pole_distance(ground, contour):
    """Distance (in units of k0) between the pole kz = -k0 beta and the deformed path."""
    pole = -ground.beta
    start, end = 1 + 0j, 1j * contour.T
    direction = end - start
    t = ((pole - start) * direction.conjugate()).real / abs(direction) ** 2
    t = min(max(t, 0.0), 1.0)
    return abs(pole - (start + t * direction))


def check_pole_clearance(ground, contour):
    if ground.is_perfect_image:
        return
    distance = pole_distance(ground, contour)
    if distance < _POLE_CLEARANCE:
        raise SingularEvaluationError(
            f"deformed path passes within {distance:.3g} k0 of the reflection pole for beta={ground.beta}")
