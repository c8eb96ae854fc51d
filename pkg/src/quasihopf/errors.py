"""Exception hierarchy shared by every module."""


class QuasiHopfError(Exception):
    """Base class for all library errors."""


class ShapeMismatch(QuasiHopfError, ValueError):
    pass


class FieldMismatch(QuasiHopfError, TypeError):
    pass


class ParseError(QuasiHopfError, ValueError):
    pass


class InvalidPresentation(QuasiHopfError):
    """Raised when a derived computation is requested on a presentation that failed validation."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class DoubleValidationFailure(InvalidPresentation):
    pass


class NotQuasiTriangular(QuasiHopfError):
    pass


class InvalidModule(QuasiHopfError):
    pass


class IntegralDimensionAnomaly(QuasiHopfError):
    pass


class CointegralDimensionAnomaly(QuasiHopfError):
    pass


class NormalizationImpossible(QuasiHopfError):
    pass


class NotNormalized(QuasiHopfError):
    pass


class CocycleInvalid(QuasiHopfError):
    pass


class InvalidGroup(QuasiHopfError):
    pass
