"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or inadmissible input data (CLI exit code 2)."""


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


class InternalError(RuntimeError):
    """Two computation routes that must agree did not; indicates a bug."""
