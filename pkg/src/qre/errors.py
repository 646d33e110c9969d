"""Exception types shared across the toolkit."""


class QREError(Exception):
    """Base class for all toolkit errors."""


class InvalidMatrix(QREError):
    """Input is not a (square, Hermitian) matrix within tolerance."""


class NotPSD(QREError):
    """Matrix has an eigenvalue below the negative PSD tolerance."""


class ShapeMismatch(QREError):
    """Operator dimensions are inconsistent with the declared tensor factorization."""


class InvalidRank(QREError):
    """Requested rank is outside [1, dim]."""


class InvalidParameter(QREError):
    """Scalar parameter outside its admissible range."""


class IrregularFunction(QREError):
    """Operation requires a Loewner measure the function does not carry."""


class SingularArgument(QREError):
    """f(0+) diverges and a zero mode of the modular operator carries weight."""


class DivergentEntropy(QREError):
    """Entropy value is +infinity under the generalized-inverse conventions.

    Carries the offending spectral index pair when raised from the
    spectral formula.
    """

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair
