"""Exception types shared across the package."""


class FieldmodeError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(FieldmodeError):
    """Operator/state dimensions are inconsistent."""


class CutoffTooSmall(FieldmodeError):
    """Fock truncation leaks more probability than the configured tolerance."""


class StabilityViolation(FieldmodeError):
    """An integrator step broke its norm/trace conservation bound."""


class TailTooLarge(FieldmodeError):
    """A truncated analytic series left a tail above its error bound."""


class NegativeEigenvalue(FieldmodeError):
    """A density matrix eigenvalue is negative beyond tolerance."""


class GridTooCoarse(FieldmodeError):
    """A phase-space grid fails its normalization check."""


class DegenerateCoupling(FieldmodeError):
    """Timescales are undefined (zero coupling or empty field)."""


class SeriesTooShort(FieldmodeError):
    """A time series does not cover the window required by an analysis."""


class ConfigError(FieldmodeError):
    """Base class for scenario-configuration problems."""


class ParseError(ConfigError):
    """Malformed config text; message carries the offending line number."""


class ValidationError(ConfigError):
    """Well-formed config with inconsistent values; message names the key."""
