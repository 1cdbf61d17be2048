"""Exception types shared across the package."""


class AnalysisError(Exception):
    """Base class for analysis failures (as opposed to caller mistakes)."""


class ConvergenceError(AnalysisError):
    """An iterative solver hit its iteration cap before reaching tolerance.

    Carries the best residual norms achieved so the caller can decide
    whether the partial answer is still usable.
    """

    def __init__(self, message, best_residual=None):
        super().__init__(message)
        self.best_residual = best_residual


class DisconnectedGraphError(AnalysisError):
    """The operation requires a connected graph."""


class ScaleLimitError(AnalysisError):
    """The graph exceeds the size limit of an exact or dense method."""


class SpectralTieError(AnalysisError):
    """Two eigenvalues or singular values coincide where a unique choice
    is required; the caller must break the tie explicitly."""
