"""
Bessel function of the first kind, order zero, for complex arguments.

The domain is split at |z| = 12. Inside, the power series
sum (-1)^m (z/2)^(2m) / (m!)^2 is summed with Kahan compensation. Outside, the Hankel asymptotic
expansion J0(z) = sqrt(2 / (pi z)) [P(z) cos(z - pi/4) - Q(z) sin(z - pi/4)] is used with every term
up to the smallest one at the switch radius. Arguments are first folded onto Re(z) >= 0, which makes
j0 exactly even.
"""
import math

import numpy as np

from .errors import UnsupportedDomainError
from .quadrature import panel_rule

SUPPORTED_RADIUS = 1e4
_SWITCH_RADIUS = 12.0
_SERIES_TERMS = 80
_HANKEL_ORDER = 24
_EPS = np.finfo(float).eps


def _hankel_coefficients(order):
    coefficients = [1.0]
    for k in range(1, order + 1):
        coefficients.append(coefficients[-1] * -((2 * k - 1) ** 2) / (8 * k))
    return np.array(coefficients)


_A = _hankel_coefficients(_HANKEL_ORDER)
# P takes the even coefficients, Q the odd ones, both with alternating signs
_P_COEFFS = _A[0::2] * (-1.0) ** np.arange(len(_A[0::2]))
_Q_COEFFS = _A[1::2] * (-1.0) ** np.arange(len(_A[1::2]))


def _power_series(z):
    q = -0.25 * z * z
    term = np.ones_like(z)
    total = np.ones_like(z)
    compensation = np.zeros_like(z)
    for m in range(1, _SERIES_TERMS):
        term = term * q / (m * m)
        y = term - compensation
        t = total + y
        compensation = (t - total) - y
        total = t
        if np.all(np.abs(term) <= _EPS * np.abs(total)):
            break
    return total


def _hankel_asymptotic(z):
    inverse_square = 1 / (z * z)
    p = np.zeros_like(z)
    for c in _P_COEFFS[::-1]:
        p = p * inverse_square + c
    q = np.zeros_like(z)
    for c in _Q_COEFFS[::-1]:
        q = q * inverse_square + c
    q = q / z
    chi = z - 0.25 * math.pi
    return np.sqrt(2 / (math.pi * z)) * (p * np.cos(chi) - q * np.sin(chi))


def j0(z):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > SUPPORTED_RADIUS):
        raise UnsupportedDomainError(
            f"J0 is supported for |z| <= {SUPPORTED_RADIUS:g}, got max |z| = {np.max(np.abs(z)):.6g}")
    shape = z.shape
    z = z.reshape(-1)
    flip = (z.real < 0) | ((z.real == 0) & (z.imag < 0))
    z = np.where(flip, -z, z)
    result = np.empty_like(z)
    small = np.abs(z) <= _SWITCH_RADIUS
    if np.any(small):
        result[small] = _power_series(z[small])
    if not np.all(small):
        result[~small] = _hankel_asymptotic(z[~small])
    if not shape:
        return complex(result[0])
    return result.reshape(shape)


def j0_oracle(z, nodes=64):
    """(1/pi) int_0^pi cos(z sin t) dt by composite Gauss-Legendre; a check on ``j0`` only."""
    z = complex(z)
    if abs(z) > 50:
        raise UnsupportedDomainError(f"the quadrature oracle is limited to |z| <= 50, got {abs(z):.6g}")
    if nodes < 64:
        raise ValueError(f"the quadrature oracle needs at least 64 nodes, got {nodes}")
    panels = max(1, math.ceil(abs(z) / 4))
    theta, weights = panel_rule(0.0, math.pi, panels, nodes)
    return complex(np.sum(weights * np.cos(z * np.sin(theta))) / math.pi)
