"""Exception hierarchy for the interpolation library."""

from typing import Optional


class GaussInterpError(Exception):
    """Base class for every error raised by the library."""


class ParameterError(GaussInterpError, ValueError):
    """A parameter lies outside its admissible range."""

    def __init__(self, message: str, param: Optional[str] = None):
        super().__init__(message)
        self.param = param


class NonIncreasingError(GaussInterpError, ValueError):
    """Node sequence is not strictly increasing."""

    def __init__(self, index: int, left: float, right: float):
        super().__init__(
            f"nodes are not strictly increasing at index {index}: {left!r} >= {right!r}"
        )
        self.index = index


class DimensionMismatch(GaussInterpError, ValueError):
    """Vector or matrix shape does not match the node window."""


class IndexOutOfRange(GaussInterpError, IndexError):
    """Node label outside the window."""


class FactorizationFailure(GaussInterpError):
    """Cholesky factorization lost positive definiteness numerically."""


class InsufficientData(GaussInterpError):
    """Too few entries above the noise floor to fit a decay rate."""


class DivergentDerivative(GaussInterpError):
    """Derivative at a node is too small to normalize a fundamental function."""


class ZeroData(GaussInterpError, ValueError):
    """Data vector is identically zero where a nonzero one is required."""
