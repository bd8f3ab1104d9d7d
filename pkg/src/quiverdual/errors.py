"""Exception hierarchy shared by the toolkit."""


class QuiverDualError(ValueError):
    """Base class for every error raised on invalid input."""


class NotABasisError(QuiverDualError):
    pass


class AmbientMismatchError(QuiverDualError):
    pass


class QuiverError(QuiverDualError):
    pass


class NotAdmissibleError(QuiverDualError):
    pass


class NotQuadraticError(QuiverDualError):
    pass


class NotHomogeneousError(QuiverDualError):
    pass


class NotFiniteDimensionalError(QuiverDualError):
    pass


class DegreeNotComputedError(QuiverDualError):
    pass


class WindowTooSmallError(QuiverDualError):
    pass


class DocumentError(QuiverDualError):
    """Malformed quiver document; ``location`` points at the offending field."""

    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class InconsistencyError(RuntimeError):
    """An internal identity that must hold failed; indicates a bug."""
