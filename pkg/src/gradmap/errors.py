"""Exception types raised across the package."""


class GradmapError(Exception):
    """Base class for all package-specific errors."""


class InputOutsideAlgebra(GradmapError):
    """A matrix handed to a Lie-algebra operation is not in the algebra."""


class UnsupportedKind(GradmapError):
    """Operation is not certified for this group kind."""


class BasePointMismatch(GradmapError):
    """Tangent vectors live at different base points."""


class NotCritical(GradmapError):
    """A Hessian was requested at a point that is not critical."""


class Unconverged(GradmapError):
    """A flow did not reach the gradient-norm threshold before t_max."""

    def __init__(self, t_max, grad_norm):
        super().__init__(f"flow not converged by t={t_max:g} (|grad f|={grad_norm:.3e})")
        self.t_max = t_max
        self.grad_norm = grad_norm


class StepUnderflow(GradmapError):
    """The adaptive integrator's step size collapsed below 1e-14."""


class DriftExceeded(GradmapError):
    """A coupled group/point integration lost synchronization."""


class InsufficientTail(GradmapError):
    """Too few trajectory samples after the fit window opens."""


class KOrbitTestInconclusive(GradmapError):
    """The K-orbit membership optimizer could not certify either way."""


class SingularGroupElement(GradmapError):
    """A group element is numerically singular."""


class NoCriticalPointFound(GradmapError):
    """A critical coset search failed within its budget."""


class ZeroDirection(GradmapError):
    """A direction vector required to be nonzero was zero."""


class SumMismatch(GradmapError):
    """Majorization inputs do not lie on the same equal-sum face."""


class ChamberViolation(GradmapError):
    """A point expected in the positive Weyl chamber is not chamber-ordered."""


class UnknownScenario(GradmapError):
    """Scenario name not present in the registry."""


class UnknownSuite(GradmapError):
    """Suite name not available for the scenario."""


class ComponentCountMismatch(GradmapError):
    """Critical-component census disagrees with the declared count."""


class InconclusiveResolution(GradmapError):
    """Two bodies differ by less than the comparison resolution."""
