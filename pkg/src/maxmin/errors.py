"""Exception types raised across the package."""


class MaxMinError(Exception):
    """Base class for all package errors."""


class ContextError(MaxMinError, ValueError):
    """Operands live over different chains (different ``top`` values)."""


class DimensionError(MaxMinError, ValueError):
    """Operand shapes do not agree."""


class OracleLimitError(MaxMinError):
    """A brute-force sweep would exceed the configured size caps."""


class ConstructionError(MaxMinError):
    """A witness could not be built or did not survive substitution."""


class NotConformingError(MaxMinError):
    """The per-cycle eigenspace description is not available for this instance."""


class InstanceError(MaxMinError, ValueError):
    """An instance file is malformed."""
