"""Exception types raised by the analysis pipeline."""


class MentionNetError(Exception):
    """Base class for all errors raised by this package."""


class EmptyCorpusError(MentionNetError):
    """An operation that needs at least one word/record got an empty corpus."""


class EmptyGraphError(MentionNetError):
    """An operation that needs at least one node got an empty graph."""


class UnknownNodeError(MentionNetError):
    """A node id was requested that is not present in the graph."""


class DisconnectedComponentError(MentionNetError):
    """Eccentricities were requested for a node set that is not connected."""


class FitError(MentionNetError):
    """Base class for tail-fitting failures."""


class InsufficientTailError(FitError):
    """Too few observations at or above x_min for a stable fit."""


class DegenerateTailError(FitError):
    """Tail observations are all identical; the likelihood is unbounded."""


class FitConvergenceError(FitError):
    """The numerical optimizer failed to converge; carries its diagnostics."""

    def __init__(self, message: str, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics
