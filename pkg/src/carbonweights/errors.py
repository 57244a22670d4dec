"""Exception hierarchy shared by the solvers, the IAM and the optimizer."""


class CarbonWeightsError(Exception):
    """Base class for all package errors."""


class ShapeValidationError(CarbonWeightsError, ValueError):
    """A damage or cost function does not have the required monotonicity/convexity."""


class InfeasibleAllocationError(CarbonWeightsError):
    """An allocation leaves a region with non-positive consumption."""

    def __init__(self, region, consumption, message=None):
        self.region = region
        self.consumption = consumption
        super().__init__(
            message
            or f"infeasible allocation: region {region!r} consumption {consumption:.6g} <= 0"
        )


class NoInteriorOptimumError(CarbonWeightsError):
    """The defining equation has no sign change on the admissible price bracket."""


class ConvergenceError(CarbonWeightsError):
    """An iterative scheme ran out of iterations; ``trace`` holds the residual history."""

    def __init__(self, message, trace=None):
        self.trace = list(trace) if trace is not None else []
        super().__init__(message)


class InvalidWeightsError(CarbonWeightsError, ValueError):
    """Welfare weights are negative, all zero, or unusable for the requested regime."""


class DivergenceError(ConvergenceError):
    """Augmented-Lagrangian constraint violation stopped decreasing."""


class UtilityDomainError(CarbonWeightsError, ValueError):
    """Utility or marginal utility evaluated outside its domain."""
