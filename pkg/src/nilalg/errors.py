"""Exception types raised across the package."""


class NilalgError(Exception):
    """Base class for every error raised by nilalg."""


class MalformedScalarError(NilalgError, ValueError):
    pass


class PoleError(NilalgError, ArithmeticError):
    """A substitution or limit hit a zero denominator."""

    def __init__(self, message, param=None):
        super().__init__(message)
        self.param = param


class ParseError(NilalgError, ValueError):
    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
            if column is not None:
                where += f"{column}:"
        super().__init__(f"{where} {message}" if where else message)
        self.message = message


class DimensionMismatchError(NilalgError, ValueError):
    pass


class SingularMatrixError(NilalgError, ArithmeticError):
    pass


class NotAnIdealError(NilalgError, ValueError):
    pass


class NotACocycleError(NilalgError, ValueError):
    """Raised with the violated equation and the basis triple that witnesses it."""

    def __init__(self, equation, triple, component=0):
        self.equation = equation
        self.triple = triple
        self.component = component
        i, j, k = triple
        super().__init__(
            f"component {component + 1} violates {equation} at (e{i}, e{j}, e{k})"
        )


class ZeroAnnihilatorError(NilalgError, ValueError):
    pass


class UnknownIdError(NilalgError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown id"


class ExcludedParameterError(NilalgError, ValueError):
    pass


class ConstraintViolationError(NilalgError, ValueError):
    pass
