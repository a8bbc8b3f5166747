"""Exception and warning types shared across the package."""


class SSHError(Exception):
    """Base class for all package errors."""


class ParameterError(SSHError, ValueError):
    """Model or numerical parameters violate their invariants."""


class DomainError(SSHError, ValueError):
    """An argument lies outside the domain where an operation is defined."""


class DegeneracyError(SSHError, ArithmeticError):
    """Band touching: eigenvectors or velocities are undefined at this point."""


class PoleError(SSHError, ArithmeticError):
    """Evaluation requested at (or on an integration path through) a pole."""


class BranchCutError(SSHError, ArithmeticError):
    """Evaluation requested on a branch cut where no principal value is defined."""


class QuadratureError(SSHError, RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class RegimeWarning(UserWarning):
    """A limiting formula is being used outside the regime where it applies."""
