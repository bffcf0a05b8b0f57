"""Exception hierarchy shared across the package."""


class WaveSimError(Exception):
    """Base class for all package errors."""


class DomainError(WaveSimError):
    """Geometric or coordinate arguments are outside their valid range."""


class ModelError(WaveSimError):
    """A medium model is malformed or physically inconsistent."""


class ConfigError(WaveSimError):
    """A scenario configuration failed validation."""


class BackendUnavailableError(WaveSimError):
    """The requested compute backend cannot run in this installation."""
