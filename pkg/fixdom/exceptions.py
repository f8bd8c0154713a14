"""Exceptions for the fixdom package."""


class Error(Exception):
    """Base class for all exceptions in this package."""


class SignatureError(Error):
    """Raised when a signature is malformed or a symbol is unknown."""


class SortError(Error):
    """Raised when terms or equations are ill-sorted."""


class PositionError(Error):
    """Raised when a position does not address a subterm."""


class UnificationError(Error):
    """Raised when unification is asked to bind an existential variable."""


class ConstraintError(Error):
    """Raised when a constraint violates its well-formedness conditions."""


class OrderingError(Error):
    """Raised when an ordering specification is not admissible."""


class InductionError(Error):
    """Raised when an induction directive violates one of the rule's conditions.

    Attributes
    ----------

    condition : str
        The violated condition, one of ``"i"``, ``"ii"``, ``"iii"`` or ``"iv"``.

    """

    def __init__(self, condition, message):
        super().__init__(f"induction condition ({condition}) violated: {message}")
        self.condition = condition


class CoverageError(Error):
    """Raised when a coverage query has no answer."""


class InconclusiveWitnessError(CoverageError):
    """Raised when a minimal witness cannot be certified within the weight window."""


class SaturationComplete(Error):
    """Raised when the given-clause loop runs out of passive clauses."""


class ParseError(Error):
    """Raised when a problem file cannot be parsed.

    Attributes
    ----------

    line : Optional[int]
    column : Optional[int]

    """

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class ConfigError(Error):
    """Raised when there is an error in the configuration."""


class TimeoutError(Error):
    """Raised when something just takes too long."""
