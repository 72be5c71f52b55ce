"""
Direct quadrature of the Sommerfeld-type spectral integrals

    i int_0^inf J0(k rho) exp(i kz zeta) (k / kz) w(kz) dk

with w = 1 (the Sommerfeld identity, equal to exp(i k0 R) / R) or w = C(k) - 1 (the reflected
correction of the half-space Green's function). The integrand is an entire function of kz, so the
propagating part may follow either the deformed path or the real axis; see ``_propagating``.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from .bessel import j0
from .errors import AccuracyError, ConfigurationError
from .quadrature import panel_rule
from .spectral import (check_pole_clearance, k_from_kz, kz_on_path, path_derivative,
                       reflection_deviation)

logger = logging.getLogger(__name__)

# largest tolerated growth of |J0(k rho) exp(i kz zeta)| along the deformed path
_PATH_GROWTH_LIMIT = math.log(1e4)
# phase excursion allowed per Gauss-Legendre panel (radians)
_PANEL_PHASE = 8.0


@dataclass(frozen=True)
class QuadratureSpec:
    panel_nodes: int = 32
    path_panels: int = 64
    tail_rel_tol: float = 1e-10
    max_tail_panels: int = 256

    def __post_init__(self):
        if self.panel_nodes < 4:
            raise ConfigurationError(f"panel_nodes must be >= 4, got {self.panel_nodes}")
        if self.path_panels < 1 or self.max_tail_panels < 1:
            raise ConfigurationError("panel counts must be positive")
        if not 0 < self.tail_rel_tol <= 1e-3:
            raise ConfigurationError(f"tail_rel_tol must lie in (0, 1e-3], got {self.tail_rel_tol}")


def _path_route(rho, zeta, k0, T, weight, quad):
    """Propagating part along kz = k0 [i xi + 1 - xi/T]; None when J0 growth would cancel badly."""
    # small-xi estimate of the worst growth, checked exactly on the nodes below
    if k0 * (0.95 * rho) ** 2 / (4 * zeta) > _PATH_GROWTH_LIMIT:
        return None
    excursion = k0 * math.hypot(1, T) * (2 * rho + zeta)
    panels = max(quad.path_panels, math.ceil(excursion / _PANEL_PHASE))
    xi, weights = panel_rule(0.0, T, panels, quad.panel_nodes)
    kz = kz_on_path(xi, k0, T)
    k = k_from_kz(kz, k0)
    growth = np.abs(k.imag) * rho - kz.imag * zeta
    if np.max(growth) > _PATH_GROWTH_LIMIT:
        return None
    logger.debug("deformed path: rho=%g zeta=%g panels=%d", rho, zeta, panels)
    integrand = j0(k * rho) * np.exp(1j * kz * zeta) * weight(kz)
    # (k / kz) dk = -dkz
    return 1j * np.sum(weights * integrand) * -path_derivative(k0, T)


def _axis_route(rho, zeta, k0, weight, quad):
    """Propagating part on the real axis with k = k0 sin(theta), which removes the 1/kz endpoint."""
    excursion = k0 * (rho + zeta) * 0.5 * math.pi
    panels = max(quad.path_panels, math.ceil(excursion / _PANEL_PHASE))
    theta, weights = panel_rule(0.0, 0.5 * math.pi, panels, quad.panel_nodes)
    k = k0 * np.sin(theta)
    kz = k0 * np.cos(theta) + 0j
    logger.debug("real axis: rho=%g zeta=%g panels=%d", rho, zeta, panels)
    integrand = j0(k * rho) * np.exp(1j * kz * zeta) * weight(kz) * k0 * np.sin(theta)
    return 1j * np.sum(weights * integrand)


def _tail(rho, zeta, k0, start, weight, quad, accumulated):
    """Evanescent part in u = sqrt(k^2 - k0^2) from ``start``: int J0(rho sqrt(k0^2 + u^2)) exp(-u zeta) w du."""
    width = 2.0 / zeta
    if rho > 0:
        width = min(width, _PANEL_PHASE / rho)
    total = accumulated
    u0 = start
    for count in range(1, quad.max_tail_panels + 1):
        u, weights = panel_rule(u0, u0 + width, 1, quad.panel_nodes)
        kz = 1j * u
        w = weight(kz)
        total = total + np.sum(weights * j0(rho * np.sqrt(k0 * k0 + u * u)) * np.exp(-u * zeta) * w)
        u0 += width
        # |J0| <= 1, so the rest is bounded by the exponential envelope
        remainder = math.exp(-u0 * zeta) / zeta * max(np.max(np.abs(w)), 1e-300)
        if remainder <= quad.tail_rel_tol * abs(total):
            logger.debug("tail converged after %d panels at u=%g", count, u0)
            return total
    raise AccuracyError(
        f"evanescent tail did not converge within {quad.max_tail_panels} panels "
        f"(rho={rho}, zeta={zeta}, remainder bound {remainder:.3g})", estimate=complex(total))


def spectral_integral(rho, zeta, k0, weight, quad, T=10.0):
    """i int_0^inf J0(k rho) exp(i kz zeta) (k / kz) weight(kz) dk for rho >= 0, zeta > 0."""
    if rho < 0:
        raise ValueError(f"horizontal distance must be non-negative, got {rho}")
    if not zeta > 0:
        raise ValueError(f"zeta must be positive for the evanescent tail to decay, got {zeta}")
    propagating = _path_route(rho, zeta, k0, T, weight, quad)
    if propagating is None:
        propagating = _axis_route(rho, zeta, k0, weight, quad)
        start = 0.0
    else:
        start = k0 * T
    return complex(_tail(rho, zeta, k0, start, weight, quad, propagating))


def _unit_weight(kz):
    return np.ones_like(kz)


def sommerfeld_identity_rhs(rho, zeta, k0, quad=None):
    """Numerical right-hand side of the Sommerfeld identity; equals exp(i k0 R) / R."""
    return spectral_integral(rho, zeta, k0, _unit_weight, quad or QuadratureSpec())


def sommerfeld_identity_lhs(rho, zeta, k0):
    r = math.hypot(rho, zeta)
    return complex(np.exp(1j * k0 * r) / r)


def reflected_integral_oracle(rho, z_sum, ground, contour, quad=None):
    """(i / 4 pi) int_0^inf exp(i kz z_sum) k J0(k rho) / kz (C(k) - 1) dk."""
    if not z_sum > 0:
        raise ValueError(f"z_sum must be positive, got {z_sum}")
    if ground.is_perfect_image:
        return 0j
    check_pole_clearance(ground, contour)
    k0, beta = ground.k0, ground.beta

    def deviation(kz):
        return reflection_deviation(kz, k0, beta)

    value = spectral_integral(rho, z_sum, k0, deviation, quad or QuadratureSpec(), T=contour.T)
    return value / (4 * math.pi)
