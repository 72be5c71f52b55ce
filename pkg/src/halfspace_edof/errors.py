class HalfSpaceError(Exception):
    pass


class ConfigurationError(HalfSpaceError, ValueError):
    pass


class GeometryError(HalfSpaceError, ValueError):
    pass


class NumericalError(HalfSpaceError, ArithmeticError):
    pass


class SingularEvaluationError(NumericalError):
    pass


class UnsupportedDomainError(NumericalError, ValueError):
    pass


class AccuracyError(NumericalError):
    """Raised when a quadrature does not reach its tolerance; ``estimate`` holds what was reached."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class IllConditionedFitError(NumericalError):
    pass


class DegenerateExponentError(NumericalError):
    pass


class ExpansionDomainError(NumericalError):
    pass


class DegenerateChannelError(NumericalError):
    pass


class QuadratureWarning(UserWarning):
    pass


class BranchWarning(UserWarning):
    pass
