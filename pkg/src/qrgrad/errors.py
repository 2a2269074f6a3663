"""Exception types raised by the factorization and gradient routines."""


class QrgradError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(QrgradError):
    """Operands have incompatible or unsupported dimensions."""


class InvalidInputError(QrgradError):
    """Input contains NaN/Inf or cannot be interpreted as a dense real matrix."""


class SingularMatrixError(QrgradError):
    """A triangular factor has a diagonal entry below the singularity threshold.

    ``index`` is the offending diagonal position.
    """

    def __init__(self, message, index):
        super().__init__(message)
        self.index = index


class RankDeficientError(SingularMatrixError):
    """The computed triangular factor reveals the input is not of full rank."""


class AssumptionViolatedError(QrgradError):
    """A structural precondition of a partitioned gradient formula failed.

    Raised when the leading square block that the wide-QR / deep-LQ gradient
    formulas require to be full rank is numerically singular. ``index`` is the
    offending diagonal position of the block's triangular factor.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class PerturbationFailureError(QrgradError):
    """A finite-difference probe point could not be factorized.

    ``entry`` is the (row, col) of the perturbed matrix entry.
    """

    def __init__(self, message, entry):
        super().__init__(message)
        self.entry = entry


class GenerationFailureError(QrgradError):
    """The harness exhausted its retry budget generating an admissible matrix."""


class MatrixFormatError(QrgradError):
    """A matrix text file does not conform to the expected format."""
