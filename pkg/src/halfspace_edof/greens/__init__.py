from ..errors import ConfigurationError
from ..prony import fit_image_expansion
from ..spectral import ContourSpec
from .abstract import (COINCIDENCE_TOLERANCE, AbstractGreens, GreenMode, PairGeometry, Point3, g_free,
                       mirror, spherical_wave)
from .closed import ClosedFormGreens, complex_image_distance, g_half_closed
from .free import FreeSpaceGreens
from .oracle import OracleGreens, g_half_oracle

_MODE_ALIASES = {
    'free': GreenMode.FREE_SPACE,
    'half': GreenMode.HALF_SPACE_CLOSED,
    'closed': GreenMode.HALF_SPACE_CLOSED,
    'oracle': GreenMode.HALF_SPACE_ORACLE,
}


def parse_mode(mode):
    if isinstance(mode, GreenMode):
        return mode
    if mode in _MODE_ALIASES:
        return _MODE_ALIASES[mode]
    try:
        return GreenMode(mode)
    except ValueError:
        raise ConfigurationError(f"the Green's function mode '{mode}' is not valid") from None


def create_evaluator(mode, ground, contour=None, quad=None, expansion=None):
    """
    Build the evaluator for one of the three Green's function modes.

    The closed form fits its image expansion here unless one is passed in.
    """
    mode = parse_mode(mode)

    if mode is GreenMode.FREE_SPACE:
        return FreeSpaceGreens(ground)

    elif mode is GreenMode.HALF_SPACE_CLOSED:
        if expansion is None:
            expansion = fit_image_expansion(ground, contour or ContourSpec())[1]
        return ClosedFormGreens(ground, expansion)

    else:
        return OracleGreens(ground, contour, quad, expansion)
