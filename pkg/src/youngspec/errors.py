"""Exception types shared across the package."""


class YoungSpecError(Exception):
    """Base class for all package-specific errors."""


# -- partitions ---------------------------------------------------------

class NotWeaklyDecreasingError(YoungSpecError, ValueError):
    pass


class NegativePartError(YoungSpecError, ValueError):
    pass


class IndexOutOfRangeError(YoungSpecError, IndexError):
    pass


class InvalidDilationError(YoungSpecError, ValueError):
    pass


class InvalidOrderError(YoungSpecError, ValueError):
    pass


class EmptyPartitionError(YoungSpecError, ValueError):
    pass


# -- matrix sampling ----------------------------------------------------

class DegenerateTruncationError(YoungSpecError, ValueError):
    pass


# -- spectra ------------------------------------------------------------

class NotHermitianError(YoungSpecError, ValueError):
    pass


class SolverFailureError(YoungSpecError, RuntimeError):
    pass


class InvalidRangeError(YoungSpecError, ValueError):
    pass


# -- combinatorics ------------------------------------------------------

class ResourceLimitError(YoungSpecError, ValueError):
    pass


# -- limit law ----------------------------------------------------------

class OutsideDomainError(YoungSpecError, ValueError):
    pass


class OutsideSupportError(YoungSpecError, ValueError):
    pass


class NoConvergenceError(YoungSpecError, RuntimeError):
    pass


class ToleranceNotMetError(YoungSpecError, RuntimeError):
    pass


class InsufficientPointsError(YoungSpecError, ValueError):
    pass


# -- cli ----------------------------------------------------------------

class ConfigError(YoungSpecError, ValueError):
    pass
