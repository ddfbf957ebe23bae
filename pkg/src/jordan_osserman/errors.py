"""Exception types raised by the package."""


class OssermanError(Exception):
    """Base class for all errors raised here."""


class SignatureError(OssermanError, ValueError):
    """Invalid inner-product data: bad shape, asymmetric or degenerate Gram matrix."""


class NullVectorError(OssermanError, ValueError):
    """A non-null vector was required but a null (or zero) vector was supplied."""


class SymmetryError(OssermanError, ValueError):
    """A tensor failed the curvature symmetry validation."""

    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


class NotSelfAdjointError(OssermanError, ValueError):
    """An operator was required to be self-adjoint for the given Gram matrix."""


class DecompositionError(OssermanError, ArithmeticError):
    """The generalized eigenspace decomposition broke down numerically.

    ``pair`` holds the offending eigenvalue indices when the failure is an
    orthogonality violation, ``component`` the index for a degenerate metric.
    """

    def __init__(self, msg, pair=None, component=None, diagnostics=None):
        super().__init__(msg)
        self.pair = pair
        self.component = component
        self.diagnostics = diagnostics or {}


class JordanAmbiguityError(OssermanError, ArithmeticError):
    """Kernel-dimension sequence is inconsistent with any Jordan structure."""

    def __init__(self, msg, sample_index=None):
        super().__init__(msg)
        self.sample_index = sample_index


class PreconditionError(OssermanError, ValueError):
    """An operation's mathematical precondition does not hold for the input."""


class HypothesisViolation(OssermanError, ValueError):
    """The signature does not satisfy p < q, so the diagonalizability claim does not apply."""
