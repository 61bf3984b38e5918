"""Exception types shared across the package."""


class ResourceLimitError(RuntimeError):
    """A configured size cap (enumeration, pair budget, ...) was exceeded."""


class ContractViolation(ValueError):
    """An input object is not a member of the family an operation expects."""
