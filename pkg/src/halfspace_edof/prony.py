"""
Exponential fitting of C(k) - 1 on the deformed contour by the modified Prony method, and the map
from the fitted (A_n, B_n) to the complex-image coefficients (a_n, b_n):

    C(k) - 1 ~ sum A_n exp(B_n xi) = sum a_n exp(-b_n kz).
"""
import logging
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import BranchWarning, DegenerateExponentError, IllConditionedFitError, NumericalError
from .spectral import check_pole_clearance, kz_on_path, reflection_deviation, xi_from_kz

logger = logging.getLogger(__name__)

_REPEATED_ROOT = 1e-8
_ZERO_ROOT = 1e-14
_CONSTANT_SAMPLES = 1e-12


@dataclass(frozen=True, eq=False)
class ReflectionSamples:
    contour: object
    values: np.ndarray
    ground: object = None

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.shape != (self.contour.W,):
            raise ValueError(f"expected {self.contour.W} samples, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise NumericalError("reflection samples must be finite")
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    @property
    def xi(self):
        return self.contour.sample_points


@dataclass(frozen=True, eq=False)
class ExponentialFit:
    """K(xi) = sum A_n exp(B_n xi); ``residual`` is the max deviation over the samples."""

    amplitudes: np.ndarray
    exponents: np.ndarray
    samples: ReflectionSamples
    residual: float = field(init=False)

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=complex)
        exponents = np.array(self.exponents, dtype=complex)
        if amplitudes.shape != exponents.shape or amplitudes.ndim != 1:
            raise ValueError("amplitudes and exponents must be 1-D sequences of equal length")
        object.__setattr__(self, 'amplitudes', amplitudes)
        object.__setattr__(self, 'exponents', exponents)
        deviation = self(self.samples.xi) - self.samples.values
        object.__setattr__(self, 'residual', float(np.max(np.abs(deviation))))

    @property
    def Q(self):
        return len(self.amplitudes)

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=complex)
        return np.sum(self.amplitudes * np.exp(self.exponents * xi[..., None]), axis=-1)


@dataclass(frozen=True, eq=False)
class ImageExpansion:
    """C(k) - 1 ~ sum a_n exp(-b_n kz), fitted at wavenumber ``k0``."""

    a: np.ndarray
    b: np.ndarray
    k0: float
    ground: object = None

    def __post_init__(self):
        a = np.array(self.a, dtype=complex)
        b = np.array(self.b, dtype=complex)
        if a.shape != b.shape or a.ndim != 1:
            raise ValueError("image coefficients a and b must be 1-D sequences of equal length")
        object.__setattr__(self, 'a', a)
        object.__setattr__(self, 'b', b)

    @classmethod
    def zero(cls, Q, k0, ground=None):
        return cls(np.zeros(Q, dtype=complex), np.zeros(Q, dtype=complex), k0, ground)

    @property
    def Q(self):
        return len(self.a)

    def __call__(self, kz):
        kz = np.asarray(kz, dtype=complex)
        return np.sum(self.a * np.exp(-self.b * kz[..., None]), axis=-1)


def sample_reflection(ground, contour):
    check_pole_clearance(ground, contour)
    kz = kz_on_path(contour.sample_points, ground.k0, contour.T)
    values = reflection_deviation(kz, ground.k0, ground.beta)
    return ReflectionSamples(contour, values, ground)


def _zero_fit(samples, Q):
    return ExponentialFit(np.zeros(Q, dtype=complex), np.zeros(Q, dtype=complex), samples)


def fit_exponentials(samples, Q):
    values = samples.values
    W = len(values)
    T = samples.contour.T
    if Q < 1 or W < 2 * Q:
        raise ValueError(f"need 1 <= Q and W >= 2Q, got W={W}, Q={Q}")
    if not np.any(values):
        return _zero_fit(samples, Q)
    if np.all(np.abs(values - values[0]) <= _CONSTANT_SAMPLES * abs(values[0])):
        amplitudes = np.zeros(Q, dtype=complex)
        amplitudes[0] = values[0]
        return ExponentialFit(amplitudes, np.zeros(Q, dtype=complex), samples)

    # difference equation sum_j C_j F(w + j) = -F(w + Q), w = 1..W-Q
    shifted = scipy.linalg.hankel(values[:W - Q], values[W - Q - 1:W - 1])
    rhs = -values[Q:W]
    coefficients = scipy.linalg.lstsq(shifted, rhs)[0]
    polynomial = np.concatenate(([1.0 + 0j], coefficients[::-1]))
    roots = scipy.linalg.eigvals(scipy.linalg.companion(polynomial))

    scale = max(np.max(np.abs(roots)), 1.0)
    if np.any(np.abs(roots) <= _ZERO_ROOT * scale):
        raise DegenerateExponentError("a Prony root vanished; the exponent is undefined")
    if Q > 1:
        gaps = np.abs(roots[:, None] - roots[None, :]) + np.diag(np.full(Q, np.inf))
        if np.min(gaps) < _REPEATED_ROOT:
            raise IllConditionedFitError(f"Prony roots coincide within {np.min(gaps):.3g}")
    if np.any(np.abs(np.angle(roots)) >= math.pi * (1 - 1e-9)):
        warnings.warn("a Prony root lies on the principal-log branch cut; "
                      "the sample spacing may be too coarse", BranchWarning)

    exponents = (W / T) * np.log(roots)
    order = np.lexsort((exponents.imag, exponents.real))
    roots, exponents = roots[order], exponents[order]
    vandermonde = roots[None, :] ** np.arange(1, W + 1)[:, None]
    amplitudes = scipy.linalg.lstsq(vandermonde, values)[0]
    return ExponentialFit(amplitudes, exponents, samples)


def to_image_coefficients(fit, contour, k0):
    T = contour.T
    factor = T / (1 - 1j * T)
    a = fit.amplitudes * np.exp(fit.exponents * factor)
    b = fit.exponents * factor / k0
    return ImageExpansion(a, b, k0, fit.samples.ground)


def evaluate_expansion(expansion, kz, contour=None):
    """
    sum a_n exp(-b_n kz) for an ImageExpansion, or K(xi(kz)) for an ExponentialFit (which then
    needs the contour it was sampled on and is evaluated at the fit's k0).
    """
    if isinstance(expansion, ExponentialFit):
        contour = contour or expansion.samples.contour
        ground = expansion.samples.ground
        if ground is None:
            raise ValueError("evaluating a fit at kz needs the ground it was sampled for")
        return expansion(xi_from_kz(kz, ground.k0, contour.T))
    return expansion(kz)


def fit_image_expansion(ground, contour):
    """Sample, fit and transform in one step."""
    samples = sample_reflection(ground, contour)
    fit = fit_exponentials(samples, contour.Q)
    expansion = to_image_coefficients(fit, contour, ground.k0)
    logger.info("Prony fit: Q=%d W=%d T=%g residual=%.3e", contour.Q, contour.W, contour.T, fit.residual)
    for n, (a, b) in enumerate(zip(expansion.a, expansion.b), start=1):
        logger.debug("image %d: a=%s b=%s", n, a, b)
    return fit, expansion
