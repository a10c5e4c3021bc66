"""Exception hierarchy shared by the solver modules."""


class SolverError(RuntimeError):
    """Base class for failures of the numerical scheme.

    ``index`` holds the offending lattice index (component axis stripped)
    when one is known.
    """

    def __init__(self, message, index=None):
        if index is not None:
            message = f"{message} at cell {tuple(int(i) for i in index)}"
        super().__init__(message)
        self.index = index


class NonpositiveDensity(SolverError):
    pass


class NonpositivePressure(SolverError):
    pass


class InvalidState(SolverError):
    pass


class MissingGhostLayer(ValueError):
    pass


class ZeroFieldInPiston(SolverError):
    pass


class OutOfDomain(ValueError):
    pass


class UsageError(ValueError):
    pass
