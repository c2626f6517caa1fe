"""Exception types raised by the allocation library."""


class SpecShareError(Exception):
    """Base class for all library errors."""


class DimensionMismatchError(SpecShareError):
    """Vector arguments do not share the same number of users."""


class InvalidInputError(SpecShareError):
    """An argument violates a documented precondition (sign, finiteness, shape)."""


class DegenerateStateError(SpecShareError):
    """A fading state has tied gain ratios; the per-state solvers require
    strictly distinct ratios (ties are probability zero under continuous
    fading and are rejected rather than arbitrated)."""


class UnboundedSubproblemError(SpecShareError):
    """A per-state Lagrangian subproblem has no finite maximizer (a user has
    zero total price but positive direct gain and no peak cap)."""


class UnsupportedCombinationError(SpecShareError):
    """The requested constraint combination is empty or unknown."""


class CaseExhaustionError(SpecShareError):
    """No structural case of a per-state solver validated; indicates a
    tolerance fault, since exactly one case must hold for valid inputs."""


class ConvergenceError(SpecShareError):
    """An iterative routine exhausted its budget without meeting its
    stationarity or accuracy target."""


class ConfigError(SpecShareError):
    """An experiment configuration file is malformed or inconsistent."""
