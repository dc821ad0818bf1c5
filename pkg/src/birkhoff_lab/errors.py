"""Exception hierarchy shared by all modules.

The CLI maps these onto process exit codes: configuration problems exit
with 2, violated preconditions/hypotheses with 3, numerical failures with 4.
"""


class BirkhoffLabError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class ConfigError(BirkhoffLabError):
    """Malformed or inconsistent configuration input."""

    exit_code = 2


class SchemaError(ConfigError):
    """A result file is missing an expected column or section."""


class PreconditionError(BirkhoffLabError):
    """An operation was called outside its contract."""

    exit_code = 3


class DomainError(PreconditionError):
    """Argument outside the mathematical domain of the operation."""


class PoleError(PreconditionError):
    """Evaluation requested exactly at a pole or removable endpoint."""


class SingularityError(PreconditionError):
    """Observable evaluated at one of its singular points."""

    def __init__(self, message, x=None):
        super().__init__(message)
        self.x = x


class CapabilityError(PreconditionError):
    """Operation not supported for this map or observable kind."""


class RoutingError(PreconditionError):
    """Caller picked the wrong evaluator for this parameter range."""


class ResolutionError(PreconditionError):
    """Requested window/epsilon grid is finer than the value grid."""


class HypothesisError(PreconditionError):
    """A theorem hypothesis (e.g. kappa < 1) fails for these parameters."""


class BudgetError(PreconditionError):
    """Requested sample size exceeds the configured compute budget."""


class NumericalError(BirkhoffLabError):
    """A computation ran but failed to reach its accuracy target."""

    exit_code = 4


class PrecisionError(NumericalError):
    """Floating-point orbit would collapse; an exact representation is required."""


class AccuracyError(NumericalError):
    """Requested absolute error unattainable at the configured orders."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class QuadratureError(NumericalError):
    """Too many quadrature nodes had to be nudged off singular points."""


class IterationError(NumericalError):
    """Iterative solver failed to converge."""

    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class PerturbationRangeError(NumericalError):
    """Twist parameter left the spectral-gap perturbation regime."""


class SamplingError(NumericalError):
    """Monte Carlo standard error exceeds the requested tolerance."""

    def __init__(self, message, standard_error=None):
        super().__init__(message)
        self.standard_error = standard_error


class TruncationError(NumericalError):
    """Green-Kubo correlation sum found no plateau within the lag budget."""

    def __init__(self, message, partial_sums=None):
        super().__init__(message)
        self.partial_sums = partial_sums


class DegenerateError(NumericalError):
    """Variance estimate is not positive; coboundary suspected."""


class VarianceError(NumericalError):
    """Too few effective samples inside the test-function window."""


class TailBiasError(NumericalError):
    """Heavy-tail rejection rate high enough to bias the estimate."""
