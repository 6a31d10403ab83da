"""Exception types shared across the package."""


class DarkportError(Exception):
    """Base class for all package errors."""


class DomainError(DarkportError, ValueError):
    """A parameter lies outside the physically meaningful domain."""


class DegenerateOverlap(DarkportError):
    """Pre- and post-selection are (numerically) orthogonal: the weak value
    is undefined."""


class GridTooNarrow(DarkportError):
    """The time grid does not cover the support of the requested envelope."""


class GridMismatch(DarkportError):
    """Two envelopes live on different time grids."""


class NotGaussian(DarkportError):
    """Operation requires an analytically Gaussian envelope."""


class ApproximationOutOfRange(DarkportError):
    """The linearized pointer response is not trustworthy for these
    parameters (|tau * a_w| too large relative to the pulse width)."""


class EmptySpectrum(DarkportError):
    """Total mass below the dark-port floor: no centroid can be estimated."""


class ShearNotOnGrid(DarkportError):
    """DIC shear is not an integer multiple of the lateral sample spacing."""


class ParseError(DarkportError):
    """Run configuration is not well-formed JSON."""


class ValidationError(DarkportError):
    """Run configuration is well-formed but invalid; message carries the
    offending field path."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")
