"""Exception hierarchy shared by every layer of the package."""


class ResidueError(Exception):
    """Base class for all errors raised by :mod:`residue`."""


class ParseError(ResidueError, ValueError):
    """Malformed expression or form text.

    ``offset`` is the byte offset (UTF-8) of the offending token.
    """

    def __init__(self, message, offset=None):
        self.message = message
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)


class FieldMismatchError(ResidueError, TypeError):
    """Operands live in different coefficient fields."""


class UnsupportedExtensionError(ResidueError):
    """The computation needs a field tower deeper than one simple extension."""

    def __init__(self, message, system=None):
        self.system = system
        super().__init__(message)


class PrecisionError(ResidueError):
    """The current truncation window cannot decide a quantity.

    This is a signal to retry with a larger budget, not a mathematical error.
    """


class PrecisionExhaustedError(ResidueError):
    """Raised after the escalation policy ran out of retries."""


class NotOnCurveError(ResidueError, ValueError):
    pass


class NonReducedError(ResidueError, ValueError):
    """The curve equation has a repeated factor."""


class ReducibleError(ResidueError, ValueError):
    pass
