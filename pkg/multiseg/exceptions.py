"""
Errors raised by the multiseg package.

Absent results are returned as None; exceptions are reserved for violated
preconditions and malformed input.
"""


class MultisegError(Exception):
    pass


class EmptySegmentError(MultisegError, ValueError):
    pass


class ParseError(MultisegError, ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = '{} (at position {})'.format(message, position)
        super(ParseError, self).__init__(message)


class RangeError(MultisegError, ValueError):
    pass


class NotLinkedError(MultisegError, ValueError):
    pass


class NotPresentError(MultisegError, KeyError):
    pass


class NotStandardFormError(MultisegError, ValueError):
    pass


class NotALadderError(MultisegError, ValueError):
    pass


class NotProperLadderError(MultisegError, ValueError):
    pass


class EmptyInputError(MultisegError, ValueError):
    pass


class ReducibleProductError(MultisegError, ValueError):
    pass


class InvariantViolation(MultisegError, AssertionError):
    """Two independent computations that must agree did not."""
