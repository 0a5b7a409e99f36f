"""Exception hierarchy shared across the package."""


class BradError(Exception):
    """Base class for all package errors."""


class ValidationError(BradError, ValueError):
    """A value violates a domain invariant. The message names the field."""


class StructuralError(BradError, ValueError):
    """Two inputs that must line up (e.g. allocation vs. workload) do not."""


class ContractViolation(BradError, RuntimeError):
    """An operation was called outside its precondition."""


class ConfigurationError(BradError, ValueError):
    """An optimizer or generator configuration is impossible."""


class WorkloadFormatError(BradError, ValueError):
    """A workload document could not be parsed."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")
