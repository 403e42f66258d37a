"""Exception hierarchy shared by all remezkit modules."""


class RemezkitError(Exception):
    """Base class for every error raised by remezkit."""


class DomainError(RemezkitError, ValueError):
    """A parameter lies outside the domain of the requested formula."""


class DegenerateSetError(RemezkitError, ValueError):
    """An arc set has zero measure (its gaps cover the whole circle)."""


class ConditioningError(RemezkitError):
    """An interpolation residual check failed."""


class SolverError(RemezkitError):
    """Base class for oracle / LP failures (CLI exit code 4)."""


class IterationLimitError(SolverError):
    pass


class LPDegeneracyError(SolverError):
    pass


class UnboundedError(SolverError):
    pass


class InfeasibleError(SolverError):
    pass


class CombError(RemezkitError):
    """Base class for comb-domain failures (CLI exit code 5)."""


class NewtonDivergenceError(CombError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NonRegularCombError(CombError):
    pass


class QuadratureError(CombError):
    pass


class SingularityError(CombError):
    pass
