"""Exception types shared across the package.

The CLI maps these onto exit codes: ValidationError -> 2,
MemoryCapError -> 3, InvariantError -> 4.
"""


class ValidationError(ValueError):
    """Malformed input: bad partition, bad state spec, bad CLI argument."""


class MemoryCapError(RuntimeError):
    """A dense allocation would exceed the configured memory cap."""


class InvariantError(RuntimeError):
    """An internal mathematical identity failed its tolerance check."""
