"""Exception hierarchy shared by the library and the CLI.

Exit-code contract of the CLI: InputError -> 1, CapacityError -> 2.
"""


class QscError(Exception):
    pass


class InputError(QscError):
    """Bad user input: malformed files, invalid flag combinations, bad parameters."""


class ParseError(InputError):
    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class ParameterError(InputError):
    pass


class CapacityError(QscError):
    """Problem too large for the built-in desk-scale solvers."""


class UndefinedCorrelation(QscError):
    """Rank correlation is undefined (zero rank variance on one side)."""
