"""
Self-checks of the numerical pipeline against independent references, run by ``halfspace-edof validate``.
"""
import logging
import math
from typing import NamedTuple

import numpy as np

from .channel import build_channel_matrix, edof_discrete, edof_from_eigenvalues
from .continuous import estimate_edof_continuous
from .errors import ConfigurationError, HalfSpaceError
from .greens import ClosedFormGreens, OracleGreens, g_free, mirror
from .prony import ImageExpansion, ReflectionSamples, fit_exponentials, fit_image_expansion
from .sommerfeld import sommerfeld_identity_lhs, sommerfeld_identity_rhs
from .spectral import ContourSpec, GroundModel

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCES = {
    'identity': 1e-6,
    'image_limit': 1e-10,
    'dcim': 1e-2,
    'prony': 1e-3,
    'edof': 1e-9,
    'convergence': 0.05,
}

DCIM_RHO = (1.0, 2.0, 5.0, 10.0, 20.0, 50.0)
DCIM_Z_SUM = (6.0, 11.0, 20.0, 40.0, 60.0)
# near grazing the direct and image terms almost cancel and the default fit is good to a few percent;
# that row is held to its own bound
GRAZING_Z_SUM = 2.0
GRAZING_BOUND = 5e-2
CONVERGENCE_COUNTS = (16, 32, 64, 128)


class CheckResult(NamedTuple):
    name: str
    passed: bool
    error: float
    tolerance: float
    detail: str = ''

    def line(self):
        verdict = 'PASS' if self.passed else 'FAIL'
        text = f"{self.name:<12} {verdict}  error={self.error:.3e}  tol={self.tolerance:.1e}"
        return f"{text}  {self.detail}" if self.detail else text


def _relative(a, b):
    return abs(a - b) / abs(b)


def check_identity(config):
    k0 = config.ground().k0
    quad = config.quadrature()
    grid = np.linspace(0.1, 5.0, 5)
    worst = 0.0
    for rho in grid:
        for zeta in grid:
            error = _relative(sommerfeld_identity_rhs(rho, zeta, k0, quad), sommerfeld_identity_lhs(rho, zeta, k0))
            worst = max(worst, error)
    return worst, "5x5 grid over [0.1, 5]^2"


def check_image_limit(config):
    ground = GroundModel.from_impedance(config.wavelength, math.inf)
    contour = config.contour()
    green = ClosedFormGreens(ground, ImageExpansion.zero(contour.Q, ground.k0, ground))
    rng = np.random.default_rng(1)
    r_r = rng.uniform([-20, -20, 0.1], [20, 20, 20], size=(20, 3))
    r_s = rng.uniform([-20, -20, 0.1], [20, 20, 20], size=(20, 3))
    reference = g_free(r_r, r_s, ground.k0) + g_free(r_r, mirror(r_s), ground.k0)
    return float(np.max(np.abs(green(r_r, r_s) - reference) / np.abs(reference))), "20 random geometries"


def _worst_relative_error(closed, oracle, z_sums):
    worst, where = 0.0, ''
    for rho in DCIM_RHO:
        for z_sum in z_sums:
            r_r = (rho, 0.0, 0.5 * z_sum)
            r_s = (0.0, 0.0, 0.5 * z_sum)
            error = _relative(closed(r_r, r_s), oracle(r_r, r_s))
            if error > worst:
                worst, where = error, f"rho={rho:g} z_sum={z_sum:g}"
    return worst, where


def check_dcim(config):
    ground, contour = config.ground(), config.contour()
    expansion = fit_image_expansion(ground, contour)[1]
    closed = ClosedFormGreens(ground, expansion)
    oracle = OracleGreens(ground, contour, config.quadrature(), expansion)
    worst, where = _worst_relative_error(closed, oracle, DCIM_Z_SUM)
    grazing, grazing_where = _worst_relative_error(closed, oracle, (GRAZING_Z_SUM,))
    detail = f"worst at {where}; grazing row {grazing:.3e} at {grazing_where} (bound {GRAZING_BOUND:g})"
    if grazing > GRAZING_BOUND:
        return math.inf, detail
    return worst, detail


def check_prony(config):
    ground, contour = config.ground(), config.contour()
    fit = fit_image_expansion(ground, contour)[0]
    # a single exponential is recovered exactly
    synthetic = ContourSpec(10.0, 10, 1)
    samples = ReflectionSamples(synthetic, (0.7 - 0.2j) * np.exp((-0.4 + 0.9j) * synthetic.sample_points))
    recovered = fit_exponentials(samples, 1)
    round_trip = max(abs(recovered.amplitudes[0] - (0.7 - 0.2j)), abs(recovered.exponents[0] - (-0.4 + 0.9j)))
    if round_trip > 1e-10:
        return math.inf, f"single-exponential round trip off by {round_trip:.3e}"
    return fit.residual, f"Q={contour.Q} W={contour.W} T={contour.T:g}"


def check_edof(config):
    worst = 0.0
    worst = max(worst, abs(edof_discrete(np.eye(4)) - 4))
    worst = max(worst, abs(edof_discrete(np.outer([1, 2j, 3], [1, -1, 0.5j])) - 1))
    worst = max(worst, abs(edof_discrete(np.diag([math.sqrt(2), 0])) - 1))
    rng = np.random.default_rng(2)
    for _ in range(5):
        H = rng.standard_normal((20, 20)) + 1j * rng.standard_normal((20, 20))
        worst = max(worst, _relative(edof_discrete(H), edof_from_eigenvalues(H)))
        worst = max(worst, _relative(edof_discrete((0.3 - 2j) * H), edof_discrete(H)))
        unitary = np.linalg.qr(rng.standard_normal((20, 20)) + 1j * rng.standard_normal((20, 20)))[0]
        worst = max(worst, _relative(edof_discrete(unitary @ H), edof_discrete(H)))
    return worst, "identity, rank one, invariances, eigenvalue reference"


def check_convergence(config):
    link = config.link()
    green = _closed(config)
    estimate = estimate_edof_continuous(link, green, config.line_order)
    limit = estimate.value
    gaps = [abs(edof_discrete(build_channel_matrix(link, m, m, green)) - limit) for m in CONVERGENCE_COUNTS]
    decreasing = all(b < a for a, b in zip(gaps, gaps[1:]))
    detail = f"L={limit:.6g}, gaps " + ' '.join(f"{gap:.3g}" for gap in gaps)
    if not estimate.converged:
        return math.inf, detail + f", L changed by {estimate.change:.3g} on doubling the order"
    if not decreasing:
        return math.inf, detail + " not decreasing"
    return gaps[-1] / limit, detail


def _closed(config):
    ground = config.ground()
    expansion = fit_image_expansion(ground, config.contour())[1]
    return ClosedFormGreens(ground, expansion)


CHECKS = {
    'identity': check_identity,
    'image_limit': check_image_limit,
    'dcim': check_dcim,
    'prony': check_prony,
    'edof': check_edof,
    'convergence': check_convergence,
}


def parse_tolerances(items):
    """``['1e-3']`` sets every tolerance, ``['dcim=1e-3']`` only the named one."""
    tolerances = dict(DEFAULT_TOLERANCES)
    for item in items or ():
        name, _, value = item.rpartition('=')
        name = name.strip()
        if name and name not in tolerances:
            raise ConfigurationError(f"unknown check '{name}'")
        try:
            value = float(value)
        except ValueError:
            raise ConfigurationError(f"invalid tolerance '{item}'") from None
        if name:
            tolerances[name] = value
        else:
            tolerances = dict.fromkeys(tolerances, value)
    return tolerances


def validate(config, tolerances=None, only=None):
    tolerances = tolerances or DEFAULT_TOLERANCES
    names = list(CHECKS)
    if only:
        unknown = [name for name in only if name not in CHECKS]
        if unknown:
            raise ConfigurationError(f"unknown check(s): {', '.join(unknown)}; choose from {', '.join(CHECKS)}")
        names = [name for name in names if name in only]

    results = []
    for name in names:
        tol = tolerances[name]
        try:
            error, detail = CHECKS[name](config)
        except HalfSpaceError as e:
            error, detail = math.inf, f"{type(e).__name__}: {e}"
        result = CheckResult(name, error <= tol, error, tol, detail)
        logger.info(result.line())
        results.append(result)
    return results
