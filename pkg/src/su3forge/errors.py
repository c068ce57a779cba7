"""Exception types raised by su3forge."""


class Su3ForgeError(Exception):
    """Base class for every error raised by this package."""


class NotHermitian(Su3ForgeError, ValueError):
    pass


class NotUnitary(Su3ForgeError, ValueError):
    pass


class DegenerateSpectrum(Su3ForgeError, ValueError):
    pass


class IndexOutOfRange(Su3ForgeError, IndexError):
    pass


class NoSolutionFound(Su3ForgeError, RuntimeError):
    pass


class NoRelationFound(Su3ForgeError, RuntimeError):
    pass


class BranchSelectionFailed(Su3ForgeError, RuntimeError):
    """No log branch put the involution square into the expected subspace.

    ``diagnostics`` holds the best (branch, residual) pairs that were tried.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or []


class UnknownSplit(Su3ForgeError, KeyError):
    pass


class WrongSplit(Su3ForgeError, ValueError):
    pass
