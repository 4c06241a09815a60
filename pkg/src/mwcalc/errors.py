"""Exception types shared across the library."""


class MWCalcError(Exception):
    """Base class for all library errors."""


class DomainError(MWCalcError):
    """Input outside the mathematical domain of an operation (zero slot, zero polynomial, ...)."""


class HomogeneityError(MWCalcError):
    """Attempt to combine homogeneous expressions of different degrees."""


class UnsupportedFieldError(MWCalcError):
    """Operation not available over the given coefficient field."""


class UndecidedEqualityError(MWCalcError):
    """Equality test over the real model was inconclusive (use mw_compare for the three-valued answer)."""


class ExtendScalarsError(MWCalcError):
    """No unramified rational place available; a larger constant field is needed."""


class ScopeError(MWCalcError):
    """Requested computation is outside the curve-level scope of this library."""


class ParseError(MWCalcError):
    """Syntax error in an expression, field descriptor or polynomial literal."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position
