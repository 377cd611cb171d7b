"""Exception hierarchy shared across the package."""


class QdcavError(Exception):
    """Base class for all package errors."""


class ConfigError(QdcavError):
    """Configuration file cannot be parsed or violates the schema.

    `field` names the offending key when known.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class ParameterError(ConfigError):
    """A physics parameter is outside its allowed range."""


class SpaceMismatchError(QdcavError):
    """Two operators living on different Hilbert spaces were combined."""


class StateValidationError(QdcavError):
    """A matrix failed the density-matrix invariants."""


class QuadratureError(QdcavError):
    """A numerical integral did not converge under grid refinement."""


class LiouvillianError(QdcavError):
    """Superoperator assembly failed an internal consistency check."""


class SteadyStateError(QdcavError):
    """Steady-state solve failed (degenerate, non-positive, or non-convergent)."""
