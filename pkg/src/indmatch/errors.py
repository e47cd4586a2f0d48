"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed graph or decomposition text."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class ValidationError(ValueError):
    """Input is well-formed but violates a structural invariant (e.g. a self-loop)."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ContractError(ValueError):
    """A documented precondition of an operation was violated."""
