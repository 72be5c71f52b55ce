"""
Scalar Green's function above an impedance ground by the discrete complex image method, and the
effective degrees of freedom of line-array MIMO links above that ground.
"""
__version__ = '0.0.1'

from .channel import (ChannelMatrix, LinkGeometry, UlaGeometry, build_channel_matrix, edof_discrete,
                      edof_from_eigenvalues, make_link, ula_positions)
from .config import PRESETS, ScenarioConfig, SweepSpec, format_config, load_config, parse_config
from .continuous import (ContinuousEstimate, LineQuadrature, converged_edof_continuous, edof_continuous,
                         estimate_edof_continuous, kernel_K)
from .errors import (AccuracyError, BranchWarning, ConfigurationError, DegenerateChannelError,
                     DegenerateExponentError, ExpansionDomainError, GeometryError, HalfSpaceError,
                     IllConditionedFitError, NumericalError, QuadratureWarning, SingularEvaluationError,
                     UnsupportedDomainError)
from .greens import GreenMode, create_evaluator, g_free, g_half_closed, g_half_oracle
from .prony import ExponentialFit, ImageExpansion, fit_exponentials, fit_image_expansion, to_image_coefficients
from .sommerfeld import QuadratureSpec
from .spectral import ContourSpec, GroundModel
