"""Exception types shared across the package."""


class GuardExceeded(RuntimeError):
    """A requested computation is larger than its configured resource guard."""


class FileFormatError(ValueError):
    """An input file does not match the expected schema."""
