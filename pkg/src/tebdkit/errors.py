"""Exception types shared across the toolkit."""


class ResourceError(RuntimeError):
    """Requested problem size exceeds what the dense/exact backends allow."""


class TraceDivergenceError(ArithmeticError):
    """Normalization by Tr[rho] was requested but |Tr[rho]| is numerically zero."""


class ConfigError(ValueError):
    """Invalid or inconsistent experiment configuration."""
