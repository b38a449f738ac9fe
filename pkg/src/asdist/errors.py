"""Exception types shared across the package."""


class ModelError(ValueError):
    """Invalid or inconsistent field/group input data."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed (e.g. a negative or non-integral count)."""


class UnsupportedInputError(ValueError):
    """The computation needs data that was not supplied (e.g. genus >= 2 counts)."""


class BudgetExceededError(RuntimeError):
    """An enumeration exceeded its configured budget."""


class PrecisionError(RuntimeError):
    """A numeric computation could not be certified at the working precision."""
