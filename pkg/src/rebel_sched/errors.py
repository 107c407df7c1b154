"""Exception types shared across the package."""


class GraphFormatError(ValueError):
    """An input file or edge list is malformed."""


class InstanceTooLargeError(ValueError):
    """An exact solver was asked to exceed its configured size bound."""


class IterationLimitError(RuntimeError):
    """A move loop exceeded its termination cap; this signals an implementation bug."""
