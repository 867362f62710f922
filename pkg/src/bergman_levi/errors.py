"""Exception hierarchy shared by all modules."""


class BergmanLeviError(Exception):
    """Base class for every error raised by the package."""


class DomainError(BergmanLeviError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class PoleError(BergmanLeviError, ArithmeticError):
    """Evaluation requested within the pole radius of a singularity."""


class BranchCutError(BergmanLeviError, ValueError):
    """Argument lies on a branch cut of a multivalued inverse."""


class ParameterError(BergmanLeviError, ValueError):
    """The family parameter zeta is not admissible."""


class BoundaryGuardError(BergmanLeviError, ArithmeticError):
    """Evaluation point is too close to the boundary of the domain."""


class StencilError(BergmanLeviError, ValueError):
    """A finite-difference stencil leaves the admissible set."""


class ConvergenceError(BergmanLeviError, RuntimeError):
    """An iteration or truncated series did not reach its tolerance."""


class InsufficientPointsError(BergmanLeviError, ValueError):
    """Too few usable samples to fit a limit."""
