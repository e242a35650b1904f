"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid configuration value or malformed parameter file."""


class FramingError(ValueError):
    """Signal or coded stream length inconsistent with the declared framing."""


class DecodeFailure(Exception):
    """Block decoder detected an uncorrectable error pattern."""


class RoutingError(RuntimeError):
    """Greedy forwarding could not make progress toward the sink."""
