"""Exception classes raised by fockoptics."""


class FockOpticsError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(FockOpticsError, ValueError):
    """Malformed states, elements or measurement specs (bad lengths, modes, counts)."""


class CapacityError(FockOpticsError):
    """A configured size limit was exceeded."""


class ValidationError(FockOpticsError, ValueError):
    """Physically invalid input, e.g. a state that should be normalized but is not."""


class CircuitSyntaxError(FockOpticsError):
    def __init__(self, message, line, column):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class CircuitSemanticError(FockOpticsError):
    def __init__(self, message, path):
        self.path = path
        super().__init__(f"{path}: {message}")
