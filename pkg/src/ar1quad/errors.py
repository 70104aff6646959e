"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid process parameters (the memory coefficient must satisfy 0 < |theta| < 1)."""


class DomainError(ValueError):
    """Transform argument alpha lies outside the validity domain D."""


class DomainBoundaryError(DomainError):
    """The two characteristic roots have equal modulus, so the dominant /
    recessive labelling (and hence membership in D) is ambiguous."""


class SingularSequenceError(ArithmeticError):
    """The auxiliary sequence psi vanishes at the requested index; possible
    only for complex alpha off the real-negative axis."""


class SingularConstantError(ZeroDivisionError):
    """Closed-form constants requested at alpha == 0, where the B constant
    has a 1/(-2 alpha) pole.  Callers special-case alpha == 0 instead."""


class ConvergenceError(ArithmeticError):
    """The Gaussian moment generating function diverges: I - 2*alpha*Sigma
    is not positive definite."""


class AccuracyError(ArithmeticError):
    """Quadrature failed its order-doubling self-consistency check."""
