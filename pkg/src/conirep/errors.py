"""Exception types shared across the package."""


class ConirepError(Exception):
    """Base class for all package-specific errors."""


class AllZeroMatrixError(ConirepError):
    """The matrix has no nonzero column, so no cone can be built."""


class DegenerateConeError(ConirepError):
    """A cone operation hit a rank-deficient configuration it cannot resolve."""


class IterationLimitError(ConirepError):
    """An active-set solve failed to converge within its iteration budget."""


class BudgetExceededError(ConirepError):
    """A configured size or sample budget would be exceeded."""


class InputFormatError(ConirepError):
    """A matrix or spike file could not be parsed."""
