"""Exception hierarchy shared by all modules."""


class ToeplitzHankelError(Exception):
    """Base class for every error raised by this package."""


class DegreeCap(ToeplitzHankelError):
    """A symbol window grew beyond the configured maximum degree."""


class NonzeroWinding(ToeplitzHankelError):
    """The symbol winds around the origin, so no continuous logarithm exists."""


class NearZero(ToeplitzHankelError):
    """The symbol comes too close to zero on the sampling grid."""


class NotEven(ToeplitzHankelError):
    """An even symbol was required."""


class NonSquare(ToeplitzHankelError):
    pass


class NoConvergence(ToeplitzHankelError):
    """An adaptive truncation did not reach its tolerance within the degree cap."""


class WindowTooSmall(ToeplitzHankelError):
    """The requested section is too small for an exact padded crop."""


class UnsupportedCase(ToeplitzHankelError):
    """A (k, sign) combination outside the shifted-symbol theorem."""


class SymbolSpecError(ToeplitzHankelError, ValueError):
    """Malformed JSON symbol description."""
