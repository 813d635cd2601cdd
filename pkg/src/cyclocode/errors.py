"""Exception types shared by the library and the CLI."""


class ParameterError(ValueError):
    """Inadmissible user-supplied parameters."""


class BudgetError(RuntimeError):
    """An enumeration would exceed the configured tuple budget."""


class ComputationError(RuntimeError):
    """An internal consistency check failed.

    Raised when a value that must be a rational integer is not, when a
    frequency map violates a divisibility law, or when two routes that must
    agree structurally do not.  Seeing this means a bug (or a deliberately
    corrupted input in fault-injection mode), never bad user parameters.
    """
