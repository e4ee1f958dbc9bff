"""Exception types shared across the package."""


class TeamForgeError(Exception):
    """Base class for all domain errors."""


class UnknownRole(TeamForgeError):
    """A role label matched neither a canonical name nor a documented alias."""


class Infeasible(TeamForgeError):
    """The roster cannot be partitioned into teams within the size bounds."""


class CapacityExceeded(TeamForgeError):
    """An exact computation was requested beyond its configured enumeration cap."""


class InvalidState(TeamForgeError):
    """An operation was attempted in an activity status that does not allow it."""


class NotTeammates(TeamForgeError):
    """Evaluator and evaluatee do not share a team in the activity's allocation."""


class SelfEvaluation(TeamForgeError):
    """A student attempted to evaluate themself."""


class NotFound(TeamForgeError):
    """A referenced student or activity does not exist."""


class ParseError(TeamForgeError):
    """A tabular input file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateStudent(ParseError):
    """A roster file repeats a student id."""


class SchemaVersionMismatch(TeamForgeError):
    """A state file declares a schema version this build does not understand."""


class InvalidDistribution(TeamForgeError):
    """A role weight distribution is negative or identically zero."""
