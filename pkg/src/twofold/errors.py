class InputError(ValueError):
    """Malformed or out-of-range input (CLI exit code 2)."""


class CapExceeded(RuntimeError):
    """A configured enumeration or oracle bound was exceeded (CLI exit code 3)."""


class PreconditionError(InputError):
    """An operation was called on arguments violating its precondition."""


class Falsified(AssertionError):
    """A checked mathematical property failed on a concrete instance (exit code 1)."""
