"""Exception hierarchy shared by all subpackages."""

from __future__ import annotations


class DoubleOcticError(Exception):
    """Base class for every error raised by this package."""


# exact kernel

class FieldMismatch(DoubleOcticError, ValueError):
    """Arithmetic mixed elements of two different quadratic fields."""


class ZeroPolynomial(DoubleOcticError, ValueError):
    pass


class SingularMatrix(DoubleOcticError, ValueError):
    pass


class ParseError(DoubleOcticError, SyntaxError):
    """Malformed input text; ``position`` is the 0-based character offset."""

    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.position = position
        self.source = text
        self.detail = message
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


# arrangements

class Degenerate(DoubleOcticError, ValueError):
    """A form vanished or two forms became proportional.

    ``indices`` holds the 0-based indices of the offending forms.
    """

    def __init__(self, indices: tuple[int, ...], message: str | None = None):
        self.indices = tuple(indices)
        if message is None:
            names = ", ".join(f"L{i + 1}" for i in self.indices)
            if len(self.indices) == 1:
                message = f"form {names} vanishes identically"
            else:
                message = f"forms {names} are proportional"
        super().__init__(message)


class NotInPencil(DoubleOcticError, ValueError):
    pass


class SkewLines(DoubleOcticError, ValueError):
    pass


class EqualLines(DoubleOcticError, ValueError):
    pass


class CoincidentPoints(DoubleOcticError, ValueError):
    pass


# differential operators

class NegativePowerOfT(ParseError):
    pass


class NonIntegerExponent(ParseError):
    pass


class ZeroOperator(DoubleOcticError, ValueError):
    pass


class IrregularSingularity(DoubleOcticError, ValueError):
    pass


class NotSingularHere(DoubleOcticError, ValueError):
    pass


class FieldObstruction(DoubleOcticError, ValueError):
    """Some local exponent is not an element of the coefficient field."""


# hodge ledger

class UnknownScenario(DoubleOcticError, KeyError):
    pass


class MalformedTable(DoubleOcticError, ValueError):
    pass


class PurityViolation(DoubleOcticError, ValueError):
    pass
