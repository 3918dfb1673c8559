"""Exception types shared across the package.

The CLI maps these onto JSON error objects and exit codes: domain errors
(evaluation at a pole, failed division, ...) exit 1, syntax errors exit 2.
"""


class QSliceError(Exception):
    """Base class for all library errors."""


class DivisionByZero(QSliceError, ZeroDivisionError):
    """Inverse of the zero quaternion requested."""


class RealPointAmbiguous(QSliceError):
    """A slice unit was requested for a real point, where every slice works.

    Callers that need a convention (the CLI uses I = i) must supply it
    explicitly; the library refuses to pick one silently.
    """


class UnsupportedRegionKind(QSliceError):
    """Boundary sampling requested for a region kind it is not defined for."""


class SymmetrizationNotReal(QSliceError):
    """Imaginary residue of a symmetrization exceeded tolerance.

    The symmetrization of a polynomial has real coefficients in exact
    arithmetic; this signals an internal bug or catastrophic rounding.
    """


class NotDivisible(QSliceError):
    """Exact polynomial division failed; carries the worst remainder norm."""

    def __init__(self, max_remainder: float):
        super().__init__(f"division remainder norm {max_remainder:.3e} exceeds tolerance")
        self.max_remainder = max_remainder


class NoConvergence(QSliceError):
    """Root finding or multiplicity resolution failed to converge."""


class ZeroDenominator(QSliceError):
    """Quotient or reciprocal of the zero function requested."""


class PoleEvaluation(QSliceError):
    """Evaluation requested at (or numerically on) a pole sphere."""


class UnknownIdentity(QSliceError):
    """Identity sweep name not present in the registry."""


class ExpectedPolynomial(QSliceError):
    """An operation defined for polynomials received a proper rational."""


class ParseError(QSliceError):
    """Expression syntax error; carries the byte offset of the failure."""

    def __init__(self, offset: int, message: str):
        super().__init__(f"at offset {offset}: {message}")
        self.offset = offset
        self.message = message


def error_kind(exc: Exception) -> str:
    """Stable error-kind string used in CLI JSON output."""
    if isinstance(exc, ParseError):
        return "SyntaxError"
    return type(exc).__name__
