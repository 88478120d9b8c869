"""Exception hierarchy shared by the model, solver and CLI layers."""


class ModelError(ValueError):
    """Base class for every error raised by a propagation or link model."""


class DomainError(ModelError):
    """An input lies outside the domain of a model."""


class GeometryError(ModelError):
    """Degenerate UAV/ground-node geometry (e.g. zero slant distance)."""


class SolverError(ModelError):
    """A numerical solver could not bracket or converge."""


class InfeasibleError(ModelError):
    """No altitude in the search range meets the path-loss budget."""


class SweepError(ModelError):
    """A model error raised at a specific sweep grid point."""


class ConfigError(Exception):
    """Invalid, unreadable or malformed configuration."""


class UnknownPresetError(ModelError, LookupError):
    """A weather preset label that is not in the coefficient table."""
