"""Shared error types with CLI exit-code semantics."""


class DiophlabError(Exception):
    exit_code = 2


class PrecisionError(DiophlabError):
    """Working precision exhausted without separating a decision."""

    exit_code = 3


class ResourceCapError(DiophlabError):
    """A configured resource guard (candidate cap, box budget) tripped."""

    exit_code = 4


class EnumerationCapError(ResourceCapError):
    pass


class DegenerateBasisError(ValueError):
    """Rows passed as a basis are linearly dependent."""


class GameAbort(DiophlabError):
    """An escaping play could not certify either branch of a decision."""

    exit_code = 3
