"""Exception hierarchy shared by the library and the command line."""


class PrimdecompError(Exception):
    """Base class for all primdecomp errors"""


class ValidationError(PrimdecompError, ValueError):
    """Invalid user input (CLI exit code 2)"""


class SchemaError(ValidationError):
    def __init__(self, field, message, line=None, column=None):
        self.field = field
        self.line = line
        self.column = column
        location = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(f"{location}field '{field}': {message}")


class RankMismatch(ValidationError):
    pass


class ModeMismatch(ValidationError):
    pass


class FaceNotInLattice(ValidationError):
    pass


class NonPointedCone(ValidationError):
    pass


class UnsupportedGroup(ValidationError):
    pass


class BoxTooSmall(ValidationError):
    pass


class GeneratorOutsideHull(ValidationError):
    pass


class DegreeOutsideBox(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class NotProvenClosed(ValidationError):
    pass


class BudgetError(PrimdecompError):
    """A configured budget was exceeded (CLI exit code 3)"""


class ConversionOverflow(BudgetError):
    pass


class BoxTooLarge(BudgetError):
    pass


class InvariantViolation(PrimdecompError, AssertionError):
    """An internal invariant failed; always a bug (CLI exit code 1)"""


class DecompositionUnionMismatch(InvariantViolation):
    pass


class InjectivityFailure(InvariantViolation):
    pass


class CommutativityFailure(InvariantViolation):
    pass
