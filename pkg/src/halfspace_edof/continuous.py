"""
Continuous-aperture EDoF of two line apertures,

    L = (int_S int_R |G|^2 dr_r dr_s)^2 / int_S int_S |K(r_s, r_s')|^2 dr_s dr_s',
    K(r_s, r_s') = int_R conj(G(r_r, r_s)) G(r_r, r_s') dr_r,

with every integral replaced by a composite Gauss-Legendre rule along the aperture.
"""
import logging
import math
import warnings
from typing import NamedTuple

import numpy as np

from .errors import DegenerateChannelError, GeometryError, NumericalError, QuadratureWarning
from .quadrature import panel_rule

logger = logging.getLogger(__name__)

DEFAULT_ORDER = 64
# longest panel, in wavelengths
_PANEL_WAVELENGTHS = 8.0
_CONVERGENCE_TOL = 1e-3


class LineQuadrature:
    """
    Nodes and weights along an array segment.

    Each panel carries ``order`` Gauss-Legendre nodes. With a ``wavelength`` the segment is split into
    panels of at most eight wavelengths; without one it is a single panel.
    """

    def __init__(self, geometry, order=DEFAULT_ORDER, wavelength=None):
        if int(order) != order or order < 1:
            raise ValueError(f"quadrature order must be a positive integer, got {order}")
        if not geometry.length > 0:
            raise GeometryError("a continuous aperture needs a positive length")
        self.geometry = geometry
        self.order = int(order)
        self.wavelength = wavelength
        panels = 1
        if wavelength is not None:
            panels = max(1, math.ceil(geometry.length / (_PANEL_WAVELENGTHS * wavelength)))
        self.panels = panels
        half = 0.5 * geometry.length
        offsets, self.weights = panel_rule(-half, half, panels, self.order)
        self.positions = geometry.point(offsets)

    def __len__(self):
        return len(self.weights)

    def refined(self):
        return LineQuadrature(self.geometry, 2 * self.order, self.wavelength)


def _wavelength_of(green):
    ground = getattr(green, 'ground', None)
    return None if ground is None else ground.wavelength


def kernel_K(r_s, r_s2, receiver, green, quad=None):
    """Auto-correlation kernel between two source points, integrated over the receiver segment."""
    quad = quad or LineQuadrature(receiver, wavelength=_wavelength_of(green))
    first = green(quad.positions, np.asarray(r_s, dtype=float))
    second = green(quad.positions, np.asarray(r_s2, dtype=float))
    return complex(np.sum(quad.weights * np.conj(first) * second))


def green_table(source_quad, receiver_quad, green):
    """G at every (receiver node, source node) pair."""
    return np.asarray(green(receiver_quad.positions[:, None, :], source_quad.positions[None, :, :]),
                      dtype=complex)


def kernel_matrix(source_quad, receiver_quad, green, table=None):
    """K at every pair of source nodes, from one table of Green values."""
    if table is None:
        table = green_table(source_quad, receiver_quad, green)
    return (table.conj().T * receiver_quad.weights) @ table


def edof_continuous(link, green, order=DEFAULT_ORDER, wavelength=None):
    wavelength = wavelength or _wavelength_of(green)
    source_quad = LineQuadrature(link.source, order, wavelength)
    receiver_quad = LineQuadrature(link.receiver, order, wavelength)
    logger.info("continuous aperture: %d source x %d receiver nodes", len(source_quad), len(receiver_quad))

    table = green_table(source_quad, receiver_quad, green)
    if not np.all(np.isfinite(table)):
        raise NumericalError("non-finite Green values on the aperture grid")
    peak = np.max(np.abs(table))
    if peak == 0:
        raise DegenerateChannelError("the field vanishes over the apertures")
    # L is invariant under scaling G
    kernel = kernel_matrix(source_quad, receiver_quad, green, table / peak)
    w_s = source_quad.weights
    numerator = np.dot(w_s, kernel.diagonal().real) ** 2
    denominator = w_s @ (np.abs(kernel) ** 2) @ w_s
    return float(numerator / denominator)


class ContinuousEstimate(NamedTuple):
    """L at twice the requested order, and its relative change from the requested order."""

    value: float
    coarse: float
    change: float
    converged: bool


def estimate_edof_continuous(link, green, order=DEFAULT_ORDER, rel_tol=_CONVERGENCE_TOL):
    coarse = edof_continuous(link, green, order)
    fine = edof_continuous(link, green, 2 * order)
    change = abs(fine - coarse) / abs(fine)
    return ContinuousEstimate(fine, coarse, change, change <= rel_tol)


def converged_edof_continuous(link, green, order=DEFAULT_ORDER, rel_tol=_CONVERGENCE_TOL):
    """
    L at ``order`` and at twice that order.

    Warns with QuadratureWarning when the two differ by more than ``rel_tol`` relative; either way
    the finer estimate is returned.
    """
    estimate = estimate_edof_continuous(link, green, order, rel_tol)
    if not estimate.converged:
        warnings.warn(f"continuous EDoF not converged: order {order} gives {estimate.coarse:.9g}, "
                      f"order {2 * order} gives {estimate.value:.9g}", QuadratureWarning)
    else:
        logger.debug("continuous EDoF converged: relative change %.3e on doubling", estimate.change)
    return estimate.value
