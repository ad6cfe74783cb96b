"""Exception types shared across the package."""


class QuivradError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(QuivradError, ValueError):
    """Matrix or subspace operands have incompatible shapes."""


class ParseError(QuivradError, ValueError):
    """Presentation source text is malformed."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class NotAdmissibleError(QuivradError, ValueError):
    """The relation ideal is not admissible (or cannot be certified within the cap)."""


class SplitFieldNeededError(QuivradError, RuntimeError):
    """Indecomposability over the rationals cannot be certified; a field extension splits further."""


class LimitsExceededError(QuivradError, RuntimeError):
    """Module enumeration hit its guard limits; input presumed representation-infinite."""


class MethodInapplicableError(QuivradError, ValueError):
    """A reduction method's precondition does not hold for this presentation."""


class InconsistencyError(QuivradError, RuntimeError):
    """A verified structural fact was contradicted; indicates a bug or invalid input."""
