"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Operands built for different primes or torus kinds were combined."""


class PreconditionError(ValueError):
    """An input violates a documented precondition."""


class DomainError(ValueError):
    """An operation is undefined on the given element (e.g. inverting T)."""


class PoleError(ArithmeticError):
    """An L-value was requested at a pole."""


class ParseError(ValueError):
    """Malformed serialized input."""
