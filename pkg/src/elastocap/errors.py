"""Exception types raised across the package."""


class DomainError(ValueError):
    """Argument outside the region where a quantity is defined."""


class SingularDenominatorError(DomainError):
    """Point inside the guard disc around z = +i or z = -i.

    The recursive chain divides by 1 + z**2 there; switch to the series route.
    """


class InfeasibleError(ValueError):
    """No contact angle balances the line force (sigma_l >= 2 sigma_s)."""


class InconsistentLoadError(ValueError):
    """Supplied load scale contradicts the line-equilibrium constraint."""


class ConvergenceError(RuntimeError):
    """Quadrature refinement changed the result by more than allowed."""


class DegenerateMetricError(DomainError):
    """Surface chart has a singular first fundamental form at the point."""


class IdentityViolation(ArithmeticError):
    """Two routes of an exact identity disagree beyond tolerance."""


class FitError(RuntimeError):
    """A fitted bound is violated by the data it was fitted to."""


class SlopeSignError(RuntimeError):
    """A divergence slope expected to be positive is not."""
