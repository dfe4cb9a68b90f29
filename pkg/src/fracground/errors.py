"""Exception and warning types shared across the package."""


class FracgroundError(Exception):
    """Base class for errors raised by this package."""


class ZeroModeSingularError(FracgroundError, ValueError):
    """Fractional integral applied to a field with nonzero mean.

    The integral multiplier is singular at zero frequency, so inputs must
    have (numerically) zero mean on the truncated domain.
    """


class NoPositivePartError(FracgroundError, ValueError):
    """Nehari projection of a field whose positive part vanishes."""


class BracketFailureError(FracgroundError, RuntimeError):
    """Geometric bracket expansion for the fiber stationarity equation failed."""


class DivergedError(FracgroundError, RuntimeError):
    """Descent step size underflowed below 1e-8 without an accepted step."""


class EndpointNotNegativeError(FracgroundError, RuntimeError):
    """Path endpoint could not be scaled to negative energy within bounds."""


class SpectralTailError(FracgroundError, ValueError):
    """Strict-mode rejection of a field with too much high-frequency mass."""


class SpectralTailWarning(UserWarning):
    """A field passed to a fractional operator has noticeable spectral tail mass."""
