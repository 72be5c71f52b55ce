"""
Scenario sweeps and table dumps. Every table is written as CSV with a header row, comma separators,
LF line endings and floats with 12 significant digits, so identical inputs give identical bytes.
"""
import csv
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Tuple

import numpy as np

from .channel import build_channel_matrix, edof_discrete
from .continuous import estimate_edof_continuous
from .errors import ConfigurationError, GeometryError, HalfSpaceError
from .greens import GreenMode, create_evaluator
from .prony import fit_exponentials, sample_reflection, to_image_coefficients

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ('value', 'M', 'N', 'rho', 'z_r', 'z_s', 'xi_half', 'xi_free', 'l_half', 'l_free', 'status')
FIT_COLUMNS = ('n', 'A_re', 'A_im', 'B_re', 'B_im', 'a_re', 'a_im', 'b_re', 'b_im')
# slack on the bounds 1 <= EDoF <= min(M, N)
_BOUND_SLACK = 1e-9
UNCONVERGED = 'quadrature_unconverged'


class SweepRow(NamedTuple):
    value: float
    M: int
    N: int
    rho: float
    z_r: float
    z_s: float
    xi_half: float
    xi_free: float
    l_half: float
    l_free: float
    status: str


def format_cell(value):
    if isinstance(value, (float, np.floating)):
        return '%.12g' % value
    return str(value)


def write_table(stream, columns, rows, footer=None):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_cell(cell) for cell in row])
    if footer:
        stream.write(footer + '\n')


def _evaluators(config):
    ground = config.ground()
    half = create_evaluator(config.mode, ground, config.contour(), config.quadrature())
    free = create_evaluator(GreenMode.FREE_SPACE, ground)
    return half, free


def _bounded(value, upper):
    return 1 - _BOUND_SLACK <= value <= upper * (1 + _BOUND_SLACK)


def evaluate_point(config, continuous=True):
    """
    The discrete EDoF in half and free space and, unless ``continuous`` is False, the continuous
    ones, for one scenario. Returns (xi_half, xi_free, l_half, l_free, status); failures become a
    status and NaN values instead of an exception.
    """
    nan = math.nan
    try:
        link = config.link()
        half, free = _evaluators(config)
        xi_half = edof_discrete(build_channel_matrix(link, config.N, config.M, half))
        xi_free = edof_discrete(build_channel_matrix(link, config.N, config.M, free))
        l_half = l_free = nan
        converged = True
        if continuous:
            l_half, l_free, converged = _continuous_pair(config, link, half, free)
    except HalfSpaceError as e:
        logger.warning("scenario M=%d rho=%g z_r=%g z_s=%g failed: %s", config.M, config.rho, config.z_r,
                       config.z_s, e)
        return nan, nan, nan, nan, type(e).__name__

    status = 'ok'
    limit = min(config.M, config.N)
    if not (_bounded(xi_half, limit) and _bounded(xi_free, limit)):
        status = 'edof_out_of_bounds'
    elif continuous and not (l_half >= 1 - _BOUND_SLACK and l_free >= 1 - _BOUND_SLACK):
        status = 'continuous_below_one'
    elif not converged:
        status = UNCONVERGED
    return xi_half, xi_free, l_half, l_free, status


def _continuous_pair(config, link, half, free):
    """Converged L in half and free space, each checked by doubling the order."""
    estimates = []
    for name, green in (('half', half), ('free', free)):
        estimate = estimate_edof_continuous(link, green, config.line_order)
        if not estimate.converged:
            logger.warning("continuous EDoF (%s) not converged at rho=%g z_r=%g: order %d gives %.9g, "
                           "order %d gives %.9g", name, config.rho, config.z_r, config.line_order,
                           estimate.coarse, 2 * config.line_order, estimate.value)
        estimates.append(estimate)
    return estimates[0].value, estimates[1].value, all(e.converged for e in estimates)


def _row(config, value, point):
    return SweepRow(value, config.M, config.N, config.rho, config.z_r, config.z_s, *point)


def _evaluate_task(task):
    config, continuous = task
    return evaluate_point(config, continuous)


def run_sweep(config, sweep, jobs=1):
    """One SweepRow per sweep value, in sweep order."""
    configs = [sweep.apply(config, value) for value in sweep.values]
    # the continuous EDoF does not depend on the antenna count
    per_point_continuous = sweep.variable != 'M'
    shared = None
    if not per_point_continuous:
        shared = _continuous_only(config)

    tasks = [(c, per_point_continuous) for c in configs]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            points = list(pool.map(_evaluate_task, tasks))
    else:
        points = []
        for index, task in enumerate(tasks, start=1):
            points.append(_evaluate_task(task))
            logger.info("sweep %s: point %d/%d done", sweep.variable, index, len(tasks))

    rows = []
    for value, c, point in zip(sweep.values, configs, points):
        if shared is not None:
            xi_half, xi_free, _, _, status = point
            l_half, l_free, shared_status = shared
            if status == 'ok':
                status = shared_status
            point = (xi_half, xi_free, l_half, l_free, status)
        rows.append(_row(c, value, point))
    return rows


def _continuous_only(config):
    try:
        link = config.link()
        half, free = _evaluators(config)
        l_half, l_free, converged = _continuous_pair(config, link, half, free)
    except HalfSpaceError as e:
        logger.warning("continuous EDoF failed: %s", e)
        return math.nan, math.nan, type(e).__name__
    if l_half < 1 - _BOUND_SLACK or l_free < 1 - _BOUND_SLACK:
        return l_half, l_free, 'continuous_below_one'
    return l_half, l_free, 'ok' if converged else UNCONVERGED


def optimal_antenna_number(rows, column='xi_half'):
    """
    The antenna count maximizing ``column`` over the rows of an M sweep with status ok (or an
    unconverged continuous estimate, which leaves the discrete columns intact).
    """
    candidates = [row for row in rows
                  if row.status in ('ok', UNCONVERGED) and not math.isnan(getattr(row, column))]
    if not candidates:
        return None
    if len({row.M for row in candidates}) != len(candidates):
        raise ConfigurationError("the optimal antenna number needs a sweep over M")
    return max(candidates, key=lambda row: getattr(row, column)).M


_AXES = {'x': 0, 'y': 1, 'z': 2}


@dataclass(frozen=True)
class PlaneSpec:
    """
    A rectangular grid in the plane ``fixed_axis = fixed_value``.

    ``first`` and ``second`` are (start, stop, count) along the remaining axes in x, y, z order.
    """

    fixed_axis: str = 'x'
    fixed_value: float = 10.0
    first: Tuple[float, float, int] = (-5.0, 5.0, 101)
    second: Tuple[float, float, int] = (0.0, 10.0, 101)
    source: Tuple[float, float, float] = (0.0, 0.0, 5.0)

    def __post_init__(self):
        if self.fixed_axis not in _AXES:
            raise ConfigurationError(f"plane axis must be x, y or z, got '{self.fixed_axis}'")
        for name in ('first', 'second'):
            start, stop, count = getattr(self, name)
            if int(count) != count or count < 1:
                raise ConfigurationError(f"grid resolution must be a positive integer, got {count}")
            if count > 1 and not stop > start:
                raise ConfigurationError(f"grid range must increase, got {start}..{stop}")
        if len(self.source) != 3:
            raise ConfigurationError("source position needs three coordinates")

    @property
    def axes(self):
        return tuple(axis for axis in _AXES if axis != self.fixed_axis)

    def points(self):
        """Grid coordinates (c1, c2) and positions of shape (n1, n2, 3)."""
        c1 = np.linspace(self.first[0], self.first[1], int(self.first[2]))
        c2 = np.linspace(self.second[0], self.second[1], int(self.second[2]))
        positions = np.empty((len(c1), len(c2), 3))
        positions[..., _AXES[self.fixed_axis]] = self.fixed_value
        positions[..., _AXES[self.axes[0]]] = c1[:, None]
        positions[..., _AXES[self.axes[1]]] = c2[None, :]
        return c1, c2, positions


def dump_green_grid(config, plane):
    """Rows (c1, c2, Re G, Im G) over the plane for the configured mode."""
    c1, c2, positions = plane.points()
    if np.any(positions[..., 2] < 0) or plane.source[2] < 0:
        raise GeometryError("grid points and source must lie in the half space z >= 0")
    green = create_evaluator(config.mode, config.ground(), config.contour(), config.quadrature())
    values = green(positions, np.asarray(plane.source, dtype=float))
    logger.info("Green grid %dx%d in the plane %s=%g", len(c1), len(c2), plane.fixed_axis, plane.fixed_value)
    rows = []
    for i, first in enumerate(c1):
        for j, second in enumerate(c2):
            rows.append((float(first), float(second), float(values[i, j].real), float(values[i, j].imag)))
    return rows


def dump_fit(config):
    """Q rows of fitted amplitudes A, exponents B and image coefficients a, b, and the fit residual."""
    ground, contour = config.ground(), config.contour()
    fit = fit_exponentials(sample_reflection(ground, contour), contour.Q)
    expansion = to_image_coefficients(fit, contour, ground.k0)
    rows = []
    for n, (A, B, a, b) in enumerate(zip(fit.amplitudes, fit.exponents, expansion.a, expansion.b), start=1):
        rows.append((n, A.real, A.imag, B.real, B.imag, a.real, a.imag, b.real, b.imag))
    return rows, fit.residual
