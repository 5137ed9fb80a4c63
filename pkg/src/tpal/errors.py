"""Exception hierarchy shared by every module of the package."""


class TpalError(Exception):
    """Base class for all errors raised by :mod:`tpal`."""


class ShapeMismatch(TpalError, ValueError):
    pass


class NotPalindromic(TpalError, ValueError):
    """Raised when ``A_{-j}`` differs from ``A_j^T`` beyond tolerance."""

    def __init__(self, index, deviation, tol):
        self.index = index
        self.deviation = deviation
        self.tol = tol
        super().__init__(
            f"A_{{-{index}}} != A_{index}^T: max deviation {deviation:.3e} > tol {tol:.3e}"
        )


class NotPurelyPalindromic(TpalError, ValueError):
    pass


class ZeroArgument(TpalError, ValueError):
    pass


class DegreeParity(TpalError, ValueError):
    pass


class DegreeTooSmall(TpalError, ValueError):
    pass


class InvalidConfig(TpalError, ValueError):
    pass


class TransformFailure(TpalError, RuntimeError):
    pass


class EvaluationSingular(TpalError, ArithmeticError):
    pass


class SingularAtNode(TpalError, ArithmeticError):
    pass


class PairingFailure(TpalError, ArithmeticError):
    """Computed roots could not be grouped into reciprocal pairs."""

    def __init__(self, residual, limit):
        self.residual = residual
        self.limit = limit
        super().__init__(f"reciprocal pairing residual {residual:.3e} exceeds {limit:.1e}")


class ParseError(TpalError, ValueError):
    """Malformed coefficient or result file; carries a line/column location."""

    def __init__(self, path, line, col, message):
        self.path = path
        self.line = line
        self.col = col
        super().__init__(f"{path}:{line}:{col}: {message}")
