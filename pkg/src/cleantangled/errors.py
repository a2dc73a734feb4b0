"""Exception types shared across the package."""


class DegenerateClutterError(ValueError):
    """Raised when an operation is undefined on a degenerate clutter."""


class NotTangledError(ValueError):
    """Raised when an operation requires a tangled clutter."""


class GuardError(ValueError):
    """Raised when an input exceeds a size guard."""


class LpStatusError(ArithmeticError):
    """Raised when an LP query expected an optimum but got another status."""

    def __init__(self, status, message=None):
        super().__init__(message or f"linear program is {status}")
        self.status = status


class CertificateError(Exception):
    """A proved statement failed on an instance.

    Since the statements are theorems, this means the hypotheses did not hold
    (typically the input was not clean).  ``certificate`` holds the data that
    exhibits the failure.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate or {}
