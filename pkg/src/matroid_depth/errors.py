"""Exception types shared across the package."""


class MatroidDepthError(Exception):
    """Base class for all package-specific errors."""


class InvalidMatroid(MatroidDepthError):
    """A rank table violates one of the rank axioms."""


class InvalidInput(MatroidDepthError):
    """Malformed external input (text, JSON, CLI arguments)."""


class CapExceeded(MatroidDepthError):
    """An exact search was asked to run beyond its configured size cap."""

    def __init__(self, what: str, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class InvalidExtension(MatroidDepthError):
    """An extension specification does not satisfy its preconditions."""
