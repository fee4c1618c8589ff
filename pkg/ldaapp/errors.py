"""
ldaapp/errors.py - Exception hierarchy for the linear difference algebra toolkit

Two families:
- InputError: the user handed us something malformed (CLI exit 1, HTTP 400)
- MathError: the input is well-formed but the mathematics fails (CLI exit 2, HTTP 422)
"""


class LdaError(Exception):
    """Base class of every error raised by ldaapp."""

    exit_code = 1
    http_status = 400


class InputError(LdaError):
    exit_code = 1
    http_status = 400


class ParseError(InputError):
    """Malformed expression text; carries the offending character offset."""

    def __init__(self, message, position=None, text=None):
        self.message = message
        self.position = position
        self.text = text
        if position is None:
            super().__init__(message)
        else:
            super().__init__(f"{message} (at position {position})")


class ArityError(ParseError):
    pass


class NegativeShiftError(ParseError):
    pass


class UnknownSymbolError(ParseError):
    pass


class ValidationError(InputError):
    """Schema violation in a system or PDE file; `path` names the field."""

    def __init__(self, path, message):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)


class MathError(LdaError):
    exit_code = 2
    http_status = 422


class DivisionByZero(MathError, ZeroDivisionError):
    pass


class NoLeadingTerm(MathError):
    pass


class InconsistentSystem(MathError):
    pass


class CompletionLimitExceeded(MathError):
    pass


class InfiniteResidueBasis(MathError):
    pass


class DegreeBoundTooSmall(MathError):
    pass


class ParityError(MathError):
    pass
