"""Custom exceptions for polyverify."""


class PolyverifyError(Exception):
    """Base exception for polyverify."""
    pass


class DomainError(PolyverifyError):
    """Raised when an argument violates an operation's precondition."""

    def __init__(self, message: str, value=None):
        super().__init__(message)
        self.value = value


class UnsupportedPolygonError(DomainError):
    """Raised when a polygon index has no Eisenstein identity attached."""

    def __init__(self, m: int):
        super().__init__(f"no Eisenstein identity for m={m}", value=m)
        self.m = m


class VerificationError(PolyverifyError):
    """Raised when an oracle or identity check finds mismatches."""

    def __init__(self, message: str, failures: list = None):
        super().__init__(message)
        self.failures = failures or []


class ConfigError(PolyverifyError):
    """Raised when configuration cannot be loaded or validated."""

    def __init__(self, message: str, source: str = None):
        super().__init__(message)
        self.source = source
