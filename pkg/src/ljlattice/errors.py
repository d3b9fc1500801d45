"""Exception types shared across the package."""


class LatticeError(ValueError):
    """Degenerate or otherwise invalid lattice data."""


class ChartDomainError(LatticeError):
    """Point lies outside the fixed-area (len_u, len_v) chart."""


class DomainError(ValueError):
    """Argument outside the domain where a sum or function is defined."""


class SingularityError(DomainError):
    """Evaluation too close to a removable or essential singularity."""


class BracketError(ValueError):
    """Root bracket does not contain a sign change."""


class ConfigurationError(ValueError):
    """Search configuration leaves nothing to evaluate."""


class InvariantViolation(RuntimeError):
    """A mathematical invariant that must always hold was violated."""


class ConvergenceError(RuntimeError):
    """A truncated sum or quadrature could not reach its tolerance.

    ``bound`` is the error bound actually achieved (``inf`` if unknown).
    """

    def __init__(self, message, bound=float("inf")):
        super().__init__(message)
        self.bound = bound
