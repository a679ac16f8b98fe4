"""Exception types raised across the package."""


class FermatLinesError(Exception):
    """Base class for every error raised by fermatlines."""


class InvalidDegreeError(FermatLinesError, ValueError):
    pass


class ResidueRangeError(FermatLinesError, ValueError):
    pass


class IdenticalLineError(FermatLinesError, ValueError):
    """Raised when an incidence question is asked about a line and itself."""


class UnsupportedViewError(FermatLinesError, ValueError):
    pass


class InvalidLineError(FermatLinesError, ValueError):
    pass


class InvalidPrimeError(FermatLinesError, ValueError):
    pass


class InvalidFamilyError(FermatLinesError, ValueError):
    pass


class UnsupportedDegreeError(FermatLinesError, ValueError):
    pass


class ConstructionFailedError(FermatLinesError, RuntimeError):
    pass


class ResourceLimitError(FermatLinesError, RuntimeError):
    pass


class InvalidCertificateError(FermatLinesError, ValueError):
    pass
