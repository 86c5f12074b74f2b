"""Exception hierarchy shared by the library and the CLI."""


class URMError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class RegimeError(URMError, ValueError):
    """Parameters fall outside the regime a construction or bound covers."""

    exit_code = 3


class MalformedInputError(URMError, ValueError):
    exit_code = 4


class CapacityError(URMError):
    """A configured size guard was exceeded."""

    exit_code = 5


class InconsistentPuzzleError(URMError):
    """Puzzle rules force two values of one category onto the same person."""

    exit_code = 6


class DomainError(URMError, ValueError):
    exit_code = 7
