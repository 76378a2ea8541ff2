"""Shared exception types."""


class InputError(ValueError):
    """Caller supplied data violating a documented precondition."""


class UnsupportedError(InputError):
    """The requested computation is out of range for exact methods."""


class InternalCheckError(AssertionError):
    """A self-check that should be impossible to fail has failed.

    Raised where an exact identity is re-verified after construction; seeing
    this exception means a bug, never bad input.
    """
