"""Exception hierarchy shared by all modules."""


class OrdPatError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(OrdPatError):
    """Input violates a precondition (non-finite values, bad shape, ...)."""


class TieViolationError(OrdPatError):
    """Equal values inside a window; ties must be broken before ranking."""


class DelayTooLargeError(OrdPatError):
    """Delay d leaves no complete window inside the grid."""


class EmptyInputError(OrdPatError):
    """An operation received an empty field or histogram."""


class DegenerateInputError(OrdPatError):
    """Input is degenerate for the requested operation (e.g. constant grid)."""


class DecodeError(OrdPatError):
    """An input file could not be decoded into a grid."""


class UnsupportedFormatError(DecodeError):
    """File format is recognized but deliberately unsupported (e.g. JPEG)."""
