"""Exception types shared across the package."""


class PtBubbleError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameterError(PtBubbleError):
    """A model parameter is non-finite or outside its allowed range."""


class InconsistentScheduleError(PtBubbleError):
    """A sweep schedule violates its own consistency constraints."""


class PoleError(PtBubbleError):
    """A special function was evaluated at one of its poles."""


class PrecisionLossError(PtBubbleError):
    """An evaluation cannot reach the requested accuracy; no silently degraded value is returned."""


class CoalescenceError(PtBubbleError):
    """Eigenvalues and eigenvectors coalesce (defective matrix); biorthogonal quantities are undefined.

    Carries the single surviving eigenvector in ``eigenvector`` when available.
    """

    def __init__(self, message, eigenvector=None):
        super().__init__(message)
        self.eigenvector = eigenvector


class NotApplicableError(PtBubbleError):
    """The requested operation is only defined in a different parameter regime."""


class OutOfRegimeError(PtBubbleError):
    """An asymptotic formula was requested outside its regime of validity."""


class StiffnessError(PtBubbleError):
    """The adaptive integrator underflowed its step size."""


class MagnitudeError(PtBubbleError):
    """Propagated amplitudes overflowed; consider the background-loss rescaling."""
